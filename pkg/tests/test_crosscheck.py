import pytest

from tevdeg.core import CurveClass, validate
from tevdeg.crosscheck import (
    AGREE,
    SKIPPED,
    GridSpec,
    PRESET_NAMES,
    disagreements,
    evaluate,
    iter_instances,
    run_grid,
    run_preset,
    run_qh_lemma_grid,
)

SMALL = GridSpec(rs=(2,), ells=(1,), gs=(0, 1), k_values=(1, 2), d_values=tuple(range(1, 9)))


class TestRunGrid:
    def test_small_l1_grid_agrees(self):
        results = run_grid(SMALL)
        assert results
        assert not disagreements(results)
        compared = [res for res in results if res.verdict == AGREE]
        assert compared, "expected at least one multi-engine instance"

    def test_determinism(self):
        first = run_grid(SMALL)
        second = run_grid(SMALL)
        assert first == second

    def test_lexicographic_order(self):
        spec = GridSpec(rs=(2, 3), ells=(0, 1), gs=(0, 1), k_values=(1,), d_values=(2, 3, 4, 6))
        keys = [
            (p.r, p.ell, p.g, p.beta.k, p.beta.d) for p, _ in iter_instances(spec)
        ]
        assert keys == sorted(keys)

    def test_only_balanced_instances_emitted(self):
        for p, rep in iter_instances(SMALL):
            assert p.balanced and rep.balanced

    def test_out_of_regime_grid_all_skipped(self):
        # balanced but unstable/out-of-range instances: emitted, never compared
        spec = GridSpec(rs=(2,), ells=(1,), gs=(0,), k_values=(5,), d_values=(1,))
        results = run_grid(spec)
        assert results
        assert all(res.verdict == SKIPPED for res in results)

    def test_unbalanced_grid_is_empty(self):
        # odd anticanonical degree for r = 2: no integral n exists
        spec = GridSpec(rs=(2,), ells=(1,), gs=(0,), k_values=(2,), d_values=(3,))
        assert run_grid(spec) == []

    def test_engine_subset_respected(self):
        spec = GridSpec(
            rs=(2,), ells=(1,), gs=(0,), k_values=(1,), d_values=(3,),
            engines=frozenset({"closed-l1", "residue-l1"}),
        )
        results = run_grid(spec)
        assert results
        for res in results:
            assert set(res.values) <= {"closed-l1", "residue-l1"}


class TestEvaluate:
    def test_virtual_only_instance_is_skipped(self):
        # low-degree counterexample: only the quantum engine applies
        p, rep = validate(2, 1, CurveClass(1, (1,)), 1)
        result = evaluate(p, rep)
        assert result.verdict == SKIPPED
        assert result.values == {"qh": 0}

    def test_virtual_pair_compares(self):
        p, rep = validate(2, 1, CurveClass(3, (1,)), 4)
        result = evaluate(p, rep)
        assert result.verdict == AGREE
        assert result.values["qh"] == result.values["virtual-l1"] == 4

    def test_cross_kind_comparison_in_geometric_regime(self):
        p, rep = validate(2, 1, CurveClass(5, (1,)), 7)
        result = evaluate(p, rep)
        assert result.verdict == AGREE
        assert set(result.values) >= {"grr", "closed-l1", "qh", "virtual-l1"}
        assert len(set(result.values.values())) == 1


class TestQhLemmaGrid:
    def test_all_agree(self):
        results = run_qh_lemma_grid((2,), 10)
        assert results
        assert all(res.verdict == AGREE for res in results)

    def test_includes_forced_zeros(self):
        results = run_qh_lemma_grid((2,), 10)
        zeros = [res for res in results if res.values["binomial"] == 0]
        assert zeros, "grid should include forced-zero tuples"


class TestPresets:
    def test_names(self):
        assert set(PRESET_NAMES) == {"l1-small", "genus0-small", "r2l2", "qh-lemma"}

    def test_unknown_preset(self):
        with pytest.raises(KeyError):
            run_preset("no-such-grid")
