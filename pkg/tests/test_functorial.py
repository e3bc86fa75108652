"""Tests for base change, automorphic induction and twists."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from mscalc.errors import ContextError, NotFactorwise, UnregisteredAtom, WrongLineKind
from mscalc.functorial import ExtensionContext, OrbitDatum, OrbitKind, ai, bc, galois_twist, kappa_twist
from mscalc.involution import dual_presentation
from mscalc.klyachko import KlyachkoResult, klyachko_ladder, klyachko_rep, klyachko_unitarizable
from mscalc.models import depth_sequence, sl2_type
from mscalc.partitions import repeat_pointwise, scale_multiplicity
from mscalc.segments import (
    Multisegment,
    Rep,
    complementary_pair,
    is_ladder_product,
    relocate,
    speh,
    speh_rep,
    tadic_product,
)

from .strategies import ladders, rigid_multisegments

CONTEXTS = {
    d: ExtensionContext(d, (OrbitDatum("s", 1, OrbitKind.TYPE_I), OrbitDatum("t", 2, OrbitKind.TYPE_II)))
    for d in (2, 3)
}


def ms(line, *pairs):
    return Multisegment.on_line(line, pairs)


@st.composite
def base_reps(draw):
    """Rigid Langlands or Zelevinsky reps on a base-field orbit line, with their context."""
    ctx = CONTEXTS[draw(st.sampled_from([2, 3]))]
    line = draw(st.sampled_from([ctx.small_line("s", 0), ctx.small_line("s", 1), ctx.fixed_line("t")]))
    m = relocate(draw(rigid_multisegments(max_segments=4)), line)
    presentation = draw(st.sampled_from([Rep.langlands, Rep.zelevinsky]))
    return presentation(m), ctx


@st.composite
def extension_reps(draw):
    """Rigid reps on an extension-field orbit line, with their context."""
    ctx = CONTEXTS[draw(st.sampled_from([2, 3]))]
    line = draw(st.sampled_from([ctx.small_line("t", 0), ctx.small_line("t", 1), ctx.fixed_line("s")]))
    m = relocate(draw(rigid_multisegments(max_segments=4)), line)
    presentation = draw(st.sampled_from([Rep.langlands, Rep.zelevinsky]))
    return presentation(m), ctx


@st.composite
def tadic_reps(draw, side):
    """Products of Speh factors and complementary pairs over one field, with their context."""
    ctx = CONTEXTS[draw(st.sampled_from([2, 3]))]
    small, fixed = ("s", "t") if side == "base" else ("t", "s")
    lines = [ctx.small_line(small, draw(st.integers(0, ctx.d - 1))), ctx.fixed_line(fixed)]
    pieces = []
    for _ in range(draw(st.integers(1, 3))):
        line = draw(st.sampled_from(lines))
        tau = speh(line, 0, draw(st.integers(0, 2)), draw(st.integers(1, 4)))
        alpha = draw(st.sampled_from([Fraction(0), Fraction(1, 4), Fraction(1, 3)]))
        pieces.append(complementary_pair(tau, alpha) if alpha else speh_rep(tau))
    return tadic_product(*pieces), ctx



class TestExtensionContext:
    """Tests for context validation."""

    def test_degree_must_be_prime(self):
        """Test non-prime degrees are rejected."""
        with pytest.raises(ContextError):
            ExtensionContext(4)
        with pytest.raises(ContextError):
            ExtensionContext(1)

    def test_names_unique(self):
        """Test duplicate orbit names are rejected."""
        with pytest.raises(ContextError):
            ExtensionContext(2, (OrbitDatum("s", 1, OrbitKind.TYPE_I), OrbitDatum("s", 1, OrbitKind.TYPE_II)))

    def test_atom_dimensions(self, ctx3):
        """Test a type II orbit's fixed atom has dimension k*d."""
        assert ctx3.small_atom("s", 1).dim_k == 1
        assert ctx3.fixed_atom("t").dim_k == 3
        assert ctx3.small_atom("t", 2).role_label == "SmallE(2)"
        assert ctx3.fixed_atom("s").role_label == "FixedE"

    def test_unknown_orbit(self, ctx2):
        """Test lookups of undeclared orbits fail."""
        with pytest.raises(UnregisteredAtom):
            ctx2.orbit("nope")


class TestTwists:
    """Tests for kappa_twist and galois_twist."""

    def test_kappa_shifts_small_index(self, ctx2):
        """Test SmallF(0) moves to SmallF(1)."""
        rep = Rep.langlands(ms(ctx2.small_line("s", 0), (0, 1)))
        assert kappa_twist(rep, 1, ctx2) == Rep.langlands(ms(ctx2.small_line("s", 1), (0, 1)))

    def test_kappa_fixes_fixed_atoms(self, ctx3):
        """Test FixedF is kappa-invariant."""
        rep = Rep.langlands(ms(ctx3.fixed_line("t"), (0, 1)))
        assert kappa_twist(rep, 2, ctx3) == rep

    def test_order_d(self, ctx3):
        """Test twisting d times is the identity."""
        rep = Rep.langlands(ms(ctx3.small_line("s", 1), (0, 1)))
        assert kappa_twist(rep, 3, ctx3) == rep

    def test_galois_twist(self, ctx2):
        """Test the Galois twist cycles extension-field orbits."""
        rep = Rep.langlands(ms(ctx2.small_line("t", 1), (0, 0)))
        assert galois_twist(rep, 1, ctx2) == Rep.langlands(ms(ctx2.small_line("t", 0), (0, 0)))

    def test_plain_atoms_rejected(self, ctx2, rho):
        """Test unregistered atoms are refused."""
        with pytest.raises(UnregisteredAtom):
            kappa_twist(Rep.langlands(ms(rho, (0, 1))), 1, ctx2)

    def test_wrong_side(self, ctx2):
        """Test kappa twists only apply over the base field."""
        with pytest.raises(WrongLineKind):
            kappa_twist(Rep.langlands(ms(ctx2.fixed_line("s"), (0, 1))), 1, ctx2)


class TestBaseChange:
    """Tests for bc and ai."""

    def test_small_to_fixed(self, ctx2):
        """Test a type I member base changes to the fixed atom."""
        rep = Rep.langlands(ms(ctx2.small_line("s", 0), (0, 1)))
        assert bc(rep, ctx2) == Rep.langlands(ms(ctx2.fixed_line("s"), (0, 1)))

    def test_fixed_splits(self, ctx2):
        """Test a type II fixed atom base changes to the product over its orbit."""
        rep = Rep.langlands(ms(ctx2.fixed_line("t"), (0, 1)))
        expected = Rep.langlands(ms(ctx2.small_line("t", 0), (0, 1)) + ms(ctx2.small_line("t", 1), (0, 1)))
        assert bc(rep, ctx2) == expected

    def test_collision_is_refused(self, ctx2):
        """Test two factors landing on one line raise NotFactorwise."""
        rep = Rep.langlands(ms(ctx2.small_line("s", 0), (0, 1)) + ms(ctx2.small_line("s", 1), (1, 2)))
        with pytest.raises(NotFactorwise):
            bc(rep, ctx2)

    def test_ai_examples(self, ctx3):
        """Test induction to the fixed atom and the split of FixedE."""
        rep = Rep.langlands(ms(ctx3.small_line("t", 0), (0, 1)))
        assert ai(rep, ctx3) == Rep.langlands(ms(ctx3.fixed_line("t"), (0, 1)))
        split = ai(Rep.langlands(ms(ctx3.fixed_line("s"), (0, 1))), ctx3)
        assert len(split.factors) == 3
        assert ai(Rep(), ctx3) == Rep()

    def test_wrong_side(self, ctx2):
        """Test bc refuses extension-field input."""
        with pytest.raises(WrongLineKind):
            bc(Rep.langlands(ms(ctx2.fixed_line("s"), (0, 1))), ctx2)

    def test_presentation_preserved(self, ctx2):
        """Test Z factors stay Z factors."""
        rep = Rep.zelevinsky(ms(ctx2.small_line("s", 1), (0, 2)))
        assert str(bc(rep, ctx2)) == "Z{[0,2]}@s#FixedE(k=1)"

    @settings(max_examples=500, deadline=None)
    @given(base_reps())
    def test_bc_commutes_with_dual(self, case):
        """Test bc(pi^t) = bc(pi)^t in both presentations."""
        rep, ctx = case
        assert bc(dual_presentation(rep), ctx) == dual_presentation(bc(rep, ctx))
        assert bc(dual_presentation(rep, normalize=True), ctx) == dual_presentation(bc(rep, ctx), normalize=True)

    @settings(max_examples=500, deadline=None)
    @given(extension_reps())
    def test_ai_commutes_with_dual(self, case):
        """Test ai(pi^t) = ai(pi)^t in both presentations."""
        rep, ctx = case
        assert ai(dual_presentation(rep), ctx) == dual_presentation(ai(rep, ctx))
        assert ai(dual_presentation(rep, normalize=True), ctx) == dual_presentation(ai(rep, ctx), normalize=True)

    @settings(max_examples=500, deadline=None)
    @given(base_reps())
    def test_bc_preserves_sl2_type_and_depth(self, case):
        """Test SL(2)-type and depth sequence are invariant under bc."""
        rep, ctx = case
        image = bc(rep, ctx)
        assert sl2_type(image) == sl2_type(rep)
        assert depth_sequence(image) == depth_sequence(rep)

    @settings(max_examples=500, deadline=None)
    @given(extension_reps())
    def test_ai_scales_sl2_type_and_depth(self, case):
        """Test ai repeats SL(2)-type parts d times and adds depth d times pointwise."""
        rep, ctx = case
        image = ai(rep, ctx)
        assert sl2_type(image) == scale_multiplicity(ctx.d, sl2_type(rep))
        assert depth_sequence(image) == repeat_pointwise(ctx.d, depth_sequence(rep))


class TestKlyachkoTransfer:
    """Tests for Klyachko types under bc and ai."""

    @settings(max_examples=500, deadline=None)
    @given(ladders(max_segments=5), st.sampled_from([2, 3]), st.booleans())
    def test_bc_preserves_type(self, m, d, split):
        """Test r(bc(L(m))) = r(L(m))."""
        ctx = CONTEXTS[d]
        line = ctx.fixed_line("t") if split else ctx.small_line("s", 0)
        target = relocate(m, line)
        assert klyachko_rep(bc(Rep.langlands(target), ctx)) == klyachko_ladder(target)

    @settings(max_examples=500, deadline=None)
    @given(ladders(max_segments=5), st.sampled_from([2, 3]), st.booleans())
    def test_ai_multiplies_type(self, m, d, split):
        """Test r(ai(L(m))) = d r(L(m))."""
        ctx = CONTEXTS[d]
        line = ctx.fixed_line("s") if split else ctx.small_line("t", 1)
        target = relocate(m, line)
        expected = klyachko_ladder(target)
        result = klyachko_rep(ai(Rep.langlands(target), ctx))
        if expected.is_admits:
            assert result.is_admits and result.r == d * expected.r
        else:
            assert result == expected

    @settings(max_examples=500, deadline=None)
    @given(ladders(max_segments=4), st.sampled_from([2, 3]))
    def test_ladder_class_preserved(self, m, d):
        """Test bc and ai of a ladder are products of ladders."""
        ctx = CONTEXTS[d]
        assert is_ladder_product(bc(Rep.langlands(relocate(m, ctx.fixed_line("t"))), ctx))
        assert is_ladder_product(ai(Rep.langlands(relocate(m, ctx.fixed_line("s"))), ctx))

    def test_unitarizable_type_preserved(self, ctx3):
        """Test a Tadić product keeps its type under bc."""
        line = ctx3.small_line("s", 2)
        rep = tadic_product(
            speh_rep(speh(line, 1, 2, 3)),
            complementary_pair(speh(ctx3.fixed_line("t"), 0, 0, 2), Fraction(1, 4)),
        )
        assert klyachko_unitarizable(bc(rep, ctx3)) == klyachko_unitarizable(rep)

    @settings(max_examples=500, deadline=None)
    @given(tadic_reps("base"))
    def test_bc_preserves_unitarizable_type(self, case):
        """Test r(bc(pi)) = r(pi) for random Tadić products."""
        rep, ctx = case
        assert klyachko_unitarizable(bc(rep, ctx)) == klyachko_unitarizable(rep)

    @settings(max_examples=500, deadline=None)
    @given(tadic_reps("extension"))
    def test_ai_multiplies_unitarizable_type(self, case):
        """Test r(ai(pi)) = d r(pi) for random Tadić products."""
        rep, ctx = case
        expected = klyachko_unitarizable(rep)
        assert klyachko_unitarizable(ai(rep, ctx)) == KlyachkoResult.admits(ctx.d * expected.r)
