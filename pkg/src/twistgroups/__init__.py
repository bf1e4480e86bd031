"""Freeness and relative pseudo-Anosov certificates for groups generated by
powers of Dehn twists, with an exact SL(2,Z) oracle on the torus."""

__version__ = "0.1.0"

from .errors import (InconsistencyError, InputError, InvalidCurveError, NotApplicableError,
                     OutsideDomainError, TwistGroupError)
from .words import Word, commutator
from .torus import (ALL_SLOPES, Slope, UnimodularMatrix, apply, canonicalize, enumerate_slopes,
                    fixed_slope, intersection, twist_matrix, word_matrix)
from .systems import (CurveSystem, SystemStats, cauchy_schwarz_check, lemma11_interval, norm,
                      stats)
from .pingpong import (PingPongParams, Regions, VerificationReport, WPPConfig, exceptional_curves,
                       lemma34_lambda, region_membership, verify_ppl, verify_ppwtc, verify_wpp)
from .certificates import (STANDARD_PAIRS, TORUS_TRIPLE, Verdict, Witness, classify_free_2,
                           classify_relpa_2, lemma21_min_exponents, lemma31_min_exponent,
                           lemma35_min_exponent, nonfree_witness_2, thm32_check, thm33_exponent,
                           thm36_exponent, torus_triple_certificate, torus_triple_relpa)
from .oracle import (canonical, construct_nonfree_triple, cyclic_reduce, enumerate_words,
                     find_reducibles, find_relations)
