"""Exact aligned-chain computations on trees.

Chains are plain dicts mapping vertex tuples to ``Fraction`` coefficients.
Report-style functions return the same records the command-line tool writes.
"""

from __future__ import annotations

import json
from fractions import Fraction

from ._arboreal import (
    CapExceeded,
    InvalidTree,
    Tree,
    aligned_signature,
    hull,
    is_aligned,
    is_flatmate,
    path_tree,
    product_id,
    random_tree,
    regular_ball,
)
from . import _arboreal as _core

__all__ = [
    "CapExceeded",
    "InvalidTree",
    "Tree",
    "aligned_signature",
    "boundary",
    "flatmate_probe",
    "hull",
    "is_aligned",
    "is_flatmate",
    "l1_norm",
    "min_l1_preimage",
    "norm_scan",
    "path_tree",
    "phi",
    "product_id",
    "random_tree",
    "regular_ball",
    "verify_chain_map",
    "verify_exactness",
    "verify_pate",
]


def _encode(chain):
    return {tuple(x): str(Fraction(q)) for x, q in chain.items()}


def _decode(terms):
    return {tuple(x): Fraction(q) for x, q in terms}


def phi(tree, chain, degree=0):
    """Aligned projection of a chain; ``degree`` is only read for empty chains."""
    return _decode(_core._phi(tree, _encode(chain), degree))


def boundary(chain, degree=1):
    return _decode(_core._boundary(_encode(chain), degree))


def l1_norm(chain):
    return Fraction(_core._l1_norm(_encode(chain)))


def verify_chain_map(tree, degree, samples=500, seed=0):
    return json.loads(_core._verify_chain_map(tree, degree, samples, seed))


def verify_pate(tree, samples=200, seed=0):
    return json.loads(_core._verify_pate(tree, samples, seed))


def norm_scan(tree, degree, samples=500, seed=0):
    return json.loads(_core._norm_scan(tree, degree, samples, seed))


def verify_exactness(tree=None, vertices=None, n_max=3):
    """Exactness records of the aligned complex of ``tree``, or of the full
    complex on ``vertices`` points when no tree is given."""
    if (tree is None) == (vertices is None):
        raise ValueError("give exactly one of tree and vertices")
    if tree is not None:
        return json.loads(_core._exactness_aligned(tree, n_max))
    return json.loads(_core._exactness_full(vertices, n_max))


def min_l1_preimage(first, second, cycle, degree=0):
    """Minimal l1 preimage of a cycle in the flatmate complex of first x second.

    Returns ``(status, norm, preimage, certificate_ok)``.
    """
    status, norm, preimage, ok = _core._min_l1_preimage(first, second, _encode(cycle), degree)
    return status, Fraction(norm), _decode(preimage), ok


def flatmate_probe(k_min=3, k_max=8, degree=1, samples=50, seed=0):
    return json.loads(_core._flatmate_probe(k_min, k_max, degree, samples, seed))
