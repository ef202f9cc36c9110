import pytest

from qvaluation.costmodel import (
    CostReport,
    ScalingSeries,
    bench_rows,
    bench_slopes,
    growth_exponent,
    pram_cost_y,
    qpram_cost_y,
    relation_check,
    sequential_cost_x,
    work_x,
    work_y,
)
from qvaluation.errors import DegenerateSeries, PreconditionViolated

NS = [8, 16, 32, 64, 128]


def test_sequential_x():
    assert sequential_cost_x(2).work == 3
    assert sequential_cost_x(11).work == 30
    r = sequential_cost_x(64)
    assert r.work == 189 == work_x(64)
    assert (r.processors, r.time, r.cost) == (1, 189, 189)


def test_pram_small():
    r = pram_cost_y(2)
    assert (r.processors, r.oracle_queries) == (4, 1)


def test_pram_cost_per_round():
    r = pram_cost_y(8)
    assert r.processors == 64 and r.cost == 64 * r.time
    # each of the n-1 rounds plus the final test takes a constant number of steps
    assert 8 <= r.time <= 3 * 8


def test_qpram_small():
    r = qpram_cost_y(2, 3)
    assert r.cost == 3 and r.oracle_queries == 1


def test_qpram_bad_q():
    with pytest.raises(PreconditionViolated):
        qpram_cost_y(4, 0)


@pytest.mark.parametrize("n", [2, 3, 5, 8, 16, 33, 64])
def test_law_of_work_for_classical(n):
    for r in (sequential_cost_x(n), pram_cost_y(n)):
        assert r.efficiency <= 1
        assert r.cost >= r.work
        assert r.time * r.processors >= r.work


def test_qpram_efficiency_exceeds_one():
    r = qpram_cost_y(64)
    assert r.cost == r.processors * r.time
    assert r.efficiency > 100


def test_law_of_work_guard():
    with pytest.raises(AssertionError):
        CostReport(4, work=100, processors=2, time=10)


def test_cost_slopes():
    pram = ScalingSeries.of(NS, [pram_cost_y(n).cost for n in NS])
    qp = ScalingSeries.of(NS, [qpram_cost_y(n).cost for n in NS])
    eff = ScalingSeries.of(NS, [float(qpram_cost_y(n).efficiency) for n in NS])
    assert growth_exponent(pram) == pytest.approx(3.0, abs=0.2)
    assert growth_exponent(qp) == pytest.approx(1.0, abs=0.1)
    assert growth_exponent(eff) == pytest.approx(2.0, abs=0.2)


class TestGrowthExponent:
    def test_cubic(self):
        assert growth_exponent(ScalingSeries.of(NS, [n**3 for n in NS])) == pytest.approx(3.0)

    def test_linear(self):
        assert growth_exponent(ScalingSeries.of(NS, [5 * n for n in NS])) == pytest.approx(1.0)

    def test_measured_kernel_work(self):
        s = ScalingSeries.of(NS, [work_y(n) for n in NS])
        assert growth_exponent(s) == pytest.approx(3.0, abs=0.2)

    def test_scale_invariance(self):
        vals = [work_y(n) for n in NS]
        a = growth_exponent(ScalingSeries.of(NS, vals))
        b = growth_exponent(ScalingSeries.of(NS, [7.5 * v for v in vals]))
        assert a == pytest.approx(b, abs=1e-12)

    def test_weights_keep_slopes(self):
        plain = bench_slopes(bench_rows(NS))
        weighted = bench_slopes(bench_rows(NS, weights=(6, 11, 2, 1)))
        for k in plain:
            assert weighted[k] == pytest.approx(plain[k], abs=0.1)
        assert bench_rows([8], weights=(6, 11, 2, 1))[0]["work_y"] > bench_rows([8])[0]["work_y"]

    @pytest.mark.parametrize("points", [
        ((8, 1.0), (16, 2.0)),
        ((8, 1.0), (8, 2.0), (16, 3.0)),
        ((8, 1.0), (16, 0.0), (32, 3.0)),
    ])
    def test_degenerate(self, points):
        with pytest.raises(DegenerateSeries):
            ScalingSeries(points)


class TestRelation:
    def test_qpram_equal_growth(self):
        assert relation_check(NS, 3).equal_growth

    def test_pram_unequal(self):
        r = relation_check(NS, against="pram")
        assert not r.equal_growth
        assert r.exponent_x == pytest.approx(1.0, abs=0.1)
        assert r.exponent_y == pytest.approx(3.0, abs=0.2)

    def test_repeated_n(self):
        with pytest.raises(DegenerateSeries):
            relation_check([8, 8, 8])


def test_bench_rows_columns():
    rows = bench_rows(NS)
    assert [r["n"] for r in rows] == NS
    slopes = bench_slopes(rows)
    assert slopes["work_x"] == pytest.approx(1, abs=0.1)
    assert slopes["work_y"] == pytest.approx(3, abs=0.2)
    assert slopes["cost_pram_y"] == pytest.approx(3, abs=0.2)
    assert slopes["cost_qpram_y"] == pytest.approx(1, abs=0.1)
