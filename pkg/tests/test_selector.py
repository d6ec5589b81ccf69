import numpy as np
import pytest

from src.approx.design import assemble
from src.approx.dictionary import build_candidates, pinned_family
from src.approx.grid import build_grid
from src.approx.nnls import solve_nnls
from src.approx.selector import best_record, evaluate_model, model_values, select
from src.errors import ApproxInputError, SelectionError
from src.experiments.presets import PLANTED_ATOMS, preset
from src.models import (
    BasisFamily,
    FamilyKind,
    IterationRecord,
    NnlsTrace,
    SparseApproximant,
    TargetFunction,
    TargetKind,
    TerminationReason,
    Term,
)

CANDIDATES = np.array([0.1, 0.2, 0.4, 0.8, 1.6])
FAMILY = BasisFamily(tag=FamilyKind.EXP_PINNED, pin_value=1.0)


def _record(i, residual, coefficients):
    coefficients = np.asarray(coefficients, dtype=float)
    return IterationRecord(
        iter=i,
        residual_norm=residual,
        support_size=int(np.sum(coefficients > 0)),
        coefficients=coefficients,
    )


def _trace(*records):
    return NnlsTrace(
        records=list(records),
        terminated=TerminationReason.KKT_SATISFIED,
        zero_tol=1e-12,
        candidate_values=CANDIDATES,
        family=FAMILY,
    )


def _planted_run(name):
    config = preset(name)
    grid = build_grid(config.a, config.b, config.n, config.transform, config.weight)
    cand = build_candidates(config.c, config.d, config.l, config.spacing)
    system = assemble(grid, config.family, cand, config.target)
    return config, cand, system, solve_nnls(system, max_outer=config.max_outer)


def test_single_record_trace():
    approx = select(_trace(_record(1, 0.5, [0, 0, 2.0, 0, 0])), 1)
    assert approx.terms == [Term(u=2.0, v=0.4)]
    assert approx.selected_iter == 1
    assert approx.residual_norm == 0.5
    assert approx.pin_value == 1.0


def test_minimal_residual_wins():
    trace = _trace(
        _record(1, 0.9, [0, 1.0, 0, 0, 0]),
        _record(2, 0.5, [0, 1.0, 0, 3.0, 0]),
        _record(3, 0.4, [0, 1.0, 0, 2.0, 0]),
        _record(4, 0.1, [1.0, 1.0, 0, 2.0, 0]),
    )
    approx = select(trace, 2)
    assert approx.selected_iter == 3
    assert [t.v for t in approx.terms] == [0.2, 0.8]


def test_earliest_record_wins_ties():
    trace = _trace(
        _record(1, 0.3, [0, 1.0, 0, 0, 0]),
        _record(2, 0.3, [0, 0, 1.0, 0, 0]),
    )
    assert best_record(trace, 1).iter == 1


def test_terms_sorted_by_v():
    approx = select(_trace(_record(1, 0.0, [0, 0, 0, 3.0, 1.0])), 2)
    assert [t.v for t in approx.terms] == sorted(t.v for t in approx.terms)


def test_unattained_m_lists_sizes():
    trace = _trace(_record(1, 0.9, [0, 1.0, 0, 0, 0]), _record(2, 0.5, [0, 1.0, 0, 3.0, 0]))
    with pytest.raises(SelectionError, match=r"\[1, 2\]") as info:
        select(trace, 4)
    assert info.value.attained == [1, 2]
    assert info.value.m == 4


def test_m_below_one_rejected():
    with pytest.raises(ApproxInputError):
        select(_trace(_record(1, 0.5, [1.0, 0, 0, 0, 0])), 0)


@pytest.mark.parametrize("name", ["planted_rational", "planted_expsum"])
def test_planted_atoms_recovered(name):
    config, cand, system, trace = _planted_run(name)
    approx = select(trace, 3)
    expected = sorted((float(cand.values[k - 1]), u) for k, u in PLANTED_ATOMS.items())
    assert [t.v for t in approx.terms] == [v for v, _ in expected]
    np.testing.assert_allclose([t.u for t in approx.terms], [u for _, u in expected], rtol=0, atol=1e-8)
    assert approx.residual_norm < 1e-8


@pytest.mark.parametrize("name", ["planted_rational", "planted_expsum"])
def test_recomputed_residual_matches_trace(name):
    _, cand, system, trace = _planted_run(name)
    for m in trace.attained_sizes:
        approx = select(trace, m)
        u = np.zeros(cand.l)
        index = {float(v): k for k, v in enumerate(cand.values)}
        for t in approx.terms:
            u[index[t.v]] = t.u
        recomputed = system.objective(u)
        assert recomputed == pytest.approx(approx.residual_norm ** 2, rel=1e-10, abs=1e-20)


def test_later_larger_support_has_smaller_residual():
    _, _, _, trace = _planted_run("planted_rational")
    sizes = trace.attained_sizes
    for m1 in sizes:
        for m2 in sizes:
            if m1 >= m2:
                continue
            r1, r2 = best_record(trace, m1), best_record(trace, m2)
            if r2.iter > r1.iter:
                assert r2.residual_norm <= r1.residual_norm * (1 + 1e-10)


def _approx(kind, pin_value, terms):
    family = BasisFamily(tag=kind, pin_value=pin_value)
    return SparseApproximant(terms=terms, pin_value=pin_value, family=family)


def test_rational_model_pinned_at_one():
    approx = _approx(FamilyKind.RATIONAL_PINNED, 1.0, [Term(u=0.3, v=1e-3), Term(u=2.0, v=4.0)])
    assert evaluate_model(approx, 1.0) == 1.0


def test_exp_model_pinned_at_zero():
    approx = _approx(FamilyKind.EXP_PINNED, 1.0, [Term(u=0.3, v=1e-3), Term(u=2.0, v=4.0)])
    assert evaluate_model(approx, 0.0) == 1.0


def test_empty_model_is_pin_value():
    approx = _approx(FamilyKind.EXP_PINNED, 0.75, [])
    np.testing.assert_array_equal(model_values(approx, [0.0, 1.0, 1e3]), [0.75, 0.75, 0.75])


def test_model_value_formula():
    approx = _approx(FamilyKind.EXP_PINNED, 1.0, [Term(u=0.5, v=1.0)])
    assert evaluate_model(approx, 2.0) == pytest.approx(1.0 + 0.5 * (np.exp(-2.0) - 1.0), rel=1e-15)


def test_model_outside_family_domain_rejected():
    approx = _approx(FamilyKind.RATIONAL_PINNED, 1.0, [Term(u=1.0, v=1.0)])
    with pytest.raises(ApproxInputError):
        evaluate_model(approx, 0.5)


@pytest.mark.parametrize(
    "terms",
    [
        [Term(u=0.0, v=1.0)],
        [Term(u=1.0, v=2.0), Term(u=1.0, v=1.0)],
        [Term(u=1.0, v=1.0), Term(u=1.0, v=1.0)],
    ],
)
def test_invalid_terms_rejected(terms):
    with pytest.raises(ValueError):
        _approx(FamilyKind.EXP_PINNED, 1.0, terms)


def test_selected_approximant_keeps_target():
    target = TargetFunction(tag=TargetKind.STRETCHED_EXP, alpha=0.5)
    grid = build_grid(0.0, 10.0, 50)
    system = assemble(grid, pinned_family(FamilyKind.EXP_PINNED, target), build_candidates(0.1, 10.0, 8), target)
    trace = solve_nnls(system)
    approx = select(trace, trace.records[0].support_size)
    assert approx.target == target
    assert approx.family.pin_value == 1.0
