"""Tests for the exact-matrix Jordan oracle."""

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from mscalc.errors import InvalidValue, NotNilpotent, ZeroScalar
from mscalc.models import lengths_partition
from mscalc.partitions import Partition, scale_multiplicity
from mscalc.segments import Multisegment, plain_line, relocate
from mscalc.weil_deligne import ExactMatrix, induced_block, jordan_partition, nilpotent_of, rank_sequence

from .strategies import rigid_multisegments

NONZERO = st.fractions(min_value=-5, max_value=5, max_denominator=7).filter(lambda c: c != 0)


@st.composite
def small_multisegments(draw, max_degree: int = 40):
    """Rigid multisegments on a line of dimension 1 to 3, with bounded degree."""
    k = draw(st.integers(1, 3))
    m = draw(rigid_multisegments(max_segments=8, max_degree=max_degree // k, max_length=6))
    return relocate(m, plain_line("rho", k))


def rational_matrices():
    return st.integers(1, 5).flatmap(
        lambda cols: st.lists(
            st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=5), min_size=cols, max_size=cols),
            min_size=1,
            max_size=5,
        )
    )


class TestExactMatrix:
    """Tests for ExactMatrix arithmetic and rank."""

    def test_entries_are_fractions(self):
        """Test integer entries are stored as Fraction."""
        matrix = ExactMatrix(((1, 2), (3, 4)))
        assert matrix.rows[0][1] == Fraction(2)
        assert isinstance(matrix.rows[1][0], Fraction)
        assert matrix.cols == 2

    def test_ragged_rows(self):
        """Test rows of different lengths are refused."""
        with pytest.raises(InvalidValue):
            ExactMatrix(((1, 2), (3,)))

    def test_product(self):
        """Test matrix multiplication."""
        a = ExactMatrix(((1, 2), (0, 1)))
        b = ExactMatrix(((Fraction(1, 2), 0), (0, 3)))
        assert (a @ b).rows == ((Fraction(1, 2), Fraction(6)), (Fraction(0), Fraction(3)))
        with pytest.raises(InvalidValue):
            a @ ExactMatrix(((1, 2, 3),))

    @pytest.mark.parametrize(
        "rows,expected",
        [
            (((1, 2), (2, 4)), 1),
            (((1, 2), (3, 4)), 2),
            (((0, 0), (0, 0)), 0),
            (((Fraction(1, 3), Fraction(1, 2), 1), (Fraction(2, 3), 1, 2)), 1),
            (((0, 1, 0), (0, 0, 1), (0, 0, 0)), 2),
        ],
    )
    def test_rank_examples(self, rows, expected):
        """Test ranks of small matrices."""
        assert ExactMatrix(rows).rank() == expected

    @settings(max_examples=300, deadline=None)
    @given(rational_matrices())
    def test_rank_matches_sympy(self, rows):
        """Test fraction-free elimination against sympy's rank."""
        reference = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in rows])
        assert ExactMatrix(tuple(map(tuple, rows))).rank() == reference.rank()

    def test_json_and_text(self):
        """Test the p/q and grid renderings."""
        matrix = ExactMatrix(((Fraction(1, 2), 0), (0, -3)))
        assert matrix.to_json() == [["1/2", "0/1"], ["0/1", "-3/1"]]
        assert str(matrix) == "1/2   0\n  0  -3"


class TestJordan:
    """Tests for nilpotent_of and jordan_partition."""

    def test_examples(self, rho):
        """Test single-segment blocks."""
        assert jordan_partition(nilpotent_of(Multisegment.on_line(rho, [(0, 1)]))) == Partition.of(2)
        wide = plain_line("sigma", 2)
        assert jordan_partition(nilpotent_of(Multisegment.on_line(wide, [(0, 2)]))) == Partition.of(3, 3)
        assert jordan_partition(nilpotent_of(Multisegment())) == Partition()

    def test_rank_sequence(self, rho):
        """Test ranks of powers stop at the first zero."""
        N = nilpotent_of(Multisegment.on_line(rho, [(0, 2), (5, 5)]))
        assert rank_sequence(N) == [4, 2, 1, 0]

    def test_not_nilpotent(self):
        """Test non-square and non-nilpotent inputs are refused."""
        with pytest.raises(NotNilpotent):
            jordan_partition(ExactMatrix(((0, 1, 0), (0, 0, 1))))
        with pytest.raises(NotNilpotent):
            jordan_partition(ExactMatrix(((1, 0), (0, 1))))

    def test_degree_36(self):
        """Test a five-segment multisegment on a line of dimension 2."""
        wide = plain_line("sigma", 2)
        m = Multisegment.on_line(wide, [(0, 4), (1, 5), (0, 2), (3, 6), (0, 0)])
        N = nilpotent_of(m)
        assert N.n_rows == 36
        assert jordan_partition(N) == Partition.of(5, 5, 5, 5, 4, 4, 3, 3, 1, 1)

    def test_rank_stops_falling(self):
        """Test a rank sequence that stalls above zero ends there."""
        assert rank_sequence(ExactMatrix(((0, 1), (0, 1)))) == [2, 1, 1]
        with pytest.raises(NotNilpotent):
            jordan_partition(ExactMatrix(((0, 1), (0, 1))))

    @settings(max_examples=500, deadline=None)
    @given(small_multisegments())
    def test_matches_lengths_partition(self, m):
        """Test the Jordan type of N(m) is the lengths partition of m."""
        N = nilpotent_of(m)
        assert N.n_rows == m.degree
        assert jordan_partition(N) == lengths_partition(m)

    @settings(max_examples=100, deadline=None)
    @given(small_multisegments())
    def test_rank_sequence_monotone(self, m):
        """Test ranks of powers never increase."""
        ranks = rank_sequence(nilpotent_of(m))
        assert all(a >= b for a, b in zip(ranks, ranks[1:]))
        assert ranks[-1] == 0


class TestInducedBlock:
    """Tests for induced_block."""

    def test_single_unit_scalar(self, rho):
        """Test d=1 with scalar 1 leaves the matrix unchanged."""
        N = nilpotent_of(Multisegment.on_line(rho, [(0, 2)]))
        assert induced_block(N, [1]) == N

    def test_example(self, rho):
        """Test the partition is repeated once per scalar."""
        N = nilpotent_of(Multisegment.on_line(rho, [(0, 1), (0, 0)]))
        induced = induced_block(N, [Fraction(1, 2), 3])
        assert jordan_partition(induced) == Partition.of(2, 2, 1, 1)

    def test_rejects_bad_scalars(self, rho):
        """Test zero and missing scalars are refused."""
        N = nilpotent_of(Multisegment.on_line(rho, [(0, 1)]))
        with pytest.raises(ZeroScalar):
            induced_block(N, [1, 0])
        with pytest.raises(InvalidValue):
            induced_block(N, [])

    @settings(max_examples=300, deadline=None)
    @given(small_multisegments(max_degree=10), st.lists(NONZERO, min_size=1, max_size=4))
    def test_scaling(self, m, scalars):
        """Test induction multiplies every part's multiplicity by d."""
        N = nilpotent_of(m)
        induced = induced_block(N, scalars)
        assert jordan_partition(induced) == scale_multiplicity(len(scalars), jordan_partition(N))
