import pytest

from hypertoric.errors import NonGenericAlpha
from hypertoric.morse import poincare_morse
from hypertoric.ringcalc import (
    RingPresentation,
    circle_dims,
    circle_equivariant_presentation,
    cohomology_presentation,
    cumulative,
    hilbert_dims,
    ring_dims,
)
from hypertoric.torus import new_setup, sample_generic

DIAG2 = ((1,), (1,))
TRIPLE = ((1, 0), (0, 1), (1, 1))


class TestPresentation:
    def test_diagonal_circle_generator(self):
        pres = cohomology_presentation(DIAG2)
        assert pres.nvars == 1
        # single proper flat (the empty one): x^2
        assert pres.gens == ((((2,), 1)),) or pres.gens == ((((2,), 1),),)

    def test_triple_generators(self):
        pres = cohomology_presentation(TRIPLE)
        assert pres.nvars == 2
        gens = {g for g in pres.gens}
        # flat (2,) leaves rows x1 and x2: generator x1 x2
        assert (((1, 1), 1),) in gens
        # flat (0,) leaves x2 (x1 + x2) = x1 x2 + x2^2
        assert (((0, 2), 1), ((1, 1), 1)) in gens

    def test_circle_reflected_factor(self):
        up = new_setup(DIAG2, [1])
        pres = circle_equivariant_presentation(up)
        assert pres.nvars == 2
        assert pres.gens == ((((2, 0), 1),),)  # x^2
        down = new_setup(DIAG2, [-1])
        pres2 = circle_equivariant_presentation(down)
        # (u0 - x)^2 = x^2 - 2 x u0 + u0^2
        assert pres2.gens == ((((0, 2), 1), ((1, 1), -2), ((2, 0), 1)),)

    def test_circle_requires_nonzero_pairings(self):
        with pytest.raises(NonGenericAlpha):
            circle_equivariant_presentation(new_setup(TRIPLE, [1, 2]))


class TestDims:
    def test_diagonal_circle(self):
        assert ring_dims(DIAG2) == (1, 1, 0, 0)

    def test_triple(self):
        assert ring_dims(TRIPLE) == (1, 2, 0, 0)

    def test_point(self):
        assert ring_dims(((1, 0), (0, 1))) == (1, 0, 0)

    def test_trivial_torus(self):
        assert ring_dims(((), ())) == (1, 0, 0, 0, 0)

    def test_matches_recursion_route(self):
        for weights in [DIAG2, TRIPLE, ((1,), (1,), (1,), (1,)),
                        ((1,), (2,), (3,)), ((1, 0), (0, 1), (1, 1), (1, -1))]:
            n, d = len(weights), len(weights[0])
            dims = ring_dims(weights)
            p = poincare_morse(weights)
            assert dims[:n - d + 1] == tuple(
                p.coefficient(m) for m in range(n - d + 1)), weights
            assert all(x == 0 for x in dims[n - d + 1:]), weights

    def test_custom_degree(self):
        assert ring_dims(DIAG2, max_degree=5) == (1, 1, 0, 0, 0, 0)


class TestCircleDims:
    def test_diagonal_circle_both_orientations(self):
        up = new_setup(DIAG2, [1])
        assert circle_dims(up) == (1, 2, 2, 2, 2)
        down = new_setup(DIAG2, [-1])
        assert circle_dims(down) == (1, 2, 2, 2, 2)

    def test_point_is_polynomial_ring_on_circle_class(self):
        s = new_setup(((1, 0), (0, 1)), [1, 2])
        assert circle_dims(s) == (1, 1, 1, 1)

    def test_equals_cumulative_ordinary(self):
        for weights in [DIAG2, TRIPLE, ((1,), (1,), (1,))]:
            s = sample_generic(weights, seed=2)
            n, d = s.n, s.dim
            want = cumulative(poincare_morse(weights).coeffs, n - d + 4)
            assert circle_dims(s) == want, weights


class TestCumulative:
    def test_padding(self):
        assert cumulative((1, 2), 5) == (1, 3, 3, 3, 3)
        assert cumulative((), 3) == (0, 0, 0)


class TestHilbertEdgeCases:
    def test_single_weight_presents_a_point(self):
        # The empty set is a proper flat of a single nonzero weight, so the
        # presentation has the single generator x and the quotient is Q.
        pres = cohomology_presentation(((1,),))
        assert pres.gens == ((((1,), 1),),)
        assert hilbert_dims(pres, 3) == (1, 0, 0, 0)

    def test_no_generators_leaves_the_free_ring(self):
        pres = RingPresentation(1, ())
        assert hilbert_dims(pres, 3) == (1, 1, 1, 1)
