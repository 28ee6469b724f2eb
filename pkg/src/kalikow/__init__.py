"""Eventual-equality-preserving code families over term algebras."""

from .algebra import (
    algebra_from_descriptor,
    layered_algebra,
    predecessor_algebra,
    successor_algebra,
)
from .encoder import (
    compute_cutpoints,
    compute_fg,
    compute_lmk,
    compute_u,
    decode_replay,
    encode_F0,
    encode_Fn,
    eta_prefix,
    monotone_encode,
    term_pool,
)
from .hf import hf_to_code
from .sequences import PairSpec, SequenceSpec, parse_pair, parse_spec, perturb

__version__ = "0.1.0"
