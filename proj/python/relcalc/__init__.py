"""Linear relations (multivalued operators) in C^n.

Relations are stored as orthonormal bases of their graphs in C^n x C^n.
Functions returning structured reports hand back plain dicts.
"""

import json as _json

from ._relcalc import (
    DimensionError,
    DomainError,
    Frame,
    HypothesisError,
    IoError,
    Relation,
    RelcalcError,
    Tolerance,
    TransformError,
    accretivity_margin,
    adjoint,
    cayley_selfadjoint,
    complement,
    compose,
    deficiency_index,
    deficiency_space,
    domain_of,
    epsilon_grid,
    from_generators,
    from_operator,
    gap,
    hermitian_restriction,
    identity_relation,
    intersect,
    inverse,
    is_hermitian,
    is_selfadjoint,
    is_subset,
    kernel,
    mv_part,
    norm_at,
    null_of,
    op_sum,
    operator_part,
    orthonormalize,
    quadratic_frontier,
    quotient_rep,
    range_of,
    read_relation_file,
    relation_norm,
    resolvent_norm,
    same_relation,
    same_subspace,
    scalar_mul,
    shift,
    shift_certificate,
    some_image,
    span_sum,
    st_inverse,
    suite_names,
    to_quadratic,
    write_relation_file,
)
from . import _relcalc

_DEFAULT = Tolerance()


def parts(t, tol=_DEFAULT):
    """Dimensions of D(T), R(T), N(T) and T(0)."""
    return _json.loads(_relcalc._parts(t, tol))


def classify(t, tol=_DEFAULT):
    return _json.loads(_relcalc._classify(t, tol))


def deficiency_indices(t, samples=10, seed=1, tol=_DEFAULT):
    """d_+ and d_- of a Hermitian relation plus the half-plane constancy check."""
    return _json.loads(_relcalc._deficiency_indices(t, samples, seed, tol))


def inclusion_report(t, s, tol=_DEFAULT):
    return _json.loads(_relcalc._inclusion_report(t, s, tol))


def certify_bound(t, s, a, b, variant="linear", samples=200, seed=1, tol=_DEFAULT):
    """Decide ||S(x)|| <= a||x|| + b||T(x)|| (or its quadratic form) on D(T)."""
    return _json.loads(_relcalc._certify_bound(t, s, a, b, variant, samples, seed, tol))


def projector_family(a, b, c, k_grid, tol=_DEFAULT):
    return _json.loads(_relcalc._projector_family(a, b, c, list(k_grid), tol))


def homotopy_sweep(t, s, grid=11, tol=_DEFAULT):
    return _json.loads(_relcalc._homotopy_sweep(t, s, grid, tol))


def invariance_report(t, s, mode, a=None, b=None, variant="linear", tol=_DEFAULT):
    return _json.loads(_relcalc._invariance_report(t, s, mode, a, b, variant, tol))


def generate(spec, tol=_DEFAULT):
    """Corpus relation from a spec dict, e.g. {"kind": "cayley", "n": 4, "seed": 3}.

    Returns (T, S) where S is None unless the spec describes a pair.
    """
    return _relcalc._generate(_json.dumps(spec), tol)


def relation_to_json(t):
    return _json.loads(_relcalc._relation_to_json(t))


def relation_from_json(doc, tol=_DEFAULT):
    text = doc if isinstance(doc, str) else _json.dumps(doc)
    return _relcalc._relation_from_json(text, tol)


def run_command(args):
    """Run the command-line tool in-process: (exit_code, report, summary)."""
    code, out, err = _relcalc._run_command([str(a) for a in args])
    return code, _json.loads(out), err


__all__ = [name for name in dir() if not name.startswith("_")]
