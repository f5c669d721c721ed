from fractions import Fraction

import pytest

from gradingforge.algebras import (
    NoUnit,
    NotAssociative,
    NotCommutative,
    NotReduced,
    StructureAlgebra,
    is_reduced,
    minimal_polynomial,
    nilpotent_search_reduced,
    primitive_idempotents,
    spectrum,
    subset_projection,
    tensor_cyclotomic,
    validate,
)
from gradingforge.builders import (
    broken_table,
    cyclotomic_order,
    from_number_field,
    group_ring,
    product_algebra,
    rational_algebra,
    sqrt_order,
)
from gradingforge.linalg import Matrix, kernel_basis
from gradingforge.numberfield import cyclotomic_field
from gradingforge.polys import degree


def dual_numbers():
    """Q[X]/(X^2): not reduced."""
    return StructureAlgebra("Q", [
        [[1, 0], [0, 1]],
        [[0, 1], [0, 0]],
    ])


def q_times_q():
    return StructureAlgebra("Q", [
        [[1, 0], [0, 0]],
        [[0, 0], [0, 1]],
    ])


class TestValidate:
    def test_sqrt2_ok(self):
        A = sqrt_order(2)
        unit = validate(A)
        assert unit == (1, 0)

    def test_group_ring_ok(self):
        A = group_ring([2])
        assert validate(A) == (1, 0)

    def test_broken_table(self):
        with pytest.raises((NoUnit, NotAssociative)):
            validate(broken_table())

    def test_noncommutative_rejected(self):
        A = StructureAlgebra("Q", [
            [[1, 0], [0, 1]],
            [[1, 1], [0, 0]],
        ])
        with pytest.raises(NotCommutative):
            validate(A)


class TestReduced:
    def test_dual_numbers_not_reduced(self):
        assert not is_reduced(dual_numbers())

    def test_product_reduced(self):
        assert is_reduced(q_times_q())

    def test_group_ring_c4_reduced(self):
        A = group_ring([4], base="Q")
        assert is_reduced(A)

    def test_agrees_with_nilpotent_oracle(self):
        for A in (dual_numbers(), q_times_q(), group_ring([4], base="Q"),
                  sqrt_order(2, base="Q"), cyclotomic_order(8, base="Q")):
            assert is_reduced(A) == nilpotent_search_reduced(A)


class TestMinimalPolynomial:
    def test_zero(self):
        A = sqrt_order(2, base="Q")
        assert minimal_polynomial(A.zero(), A) == [Fraction(0), Fraction(1)]

    def test_sqrt2(self):
        A = sqrt_order(2, base="Q")
        f = minimal_polynomial(A.basis_vector(1), A)
        assert f == [Fraction(-2), Fraction(0), Fraction(1)]

    def test_zeta8_real_part(self):
        # zeta8 + zeta8^-1 = sqrt(2) in Q(zeta_8)
        A = cyclotomic_order(8, base="Q")
        K = cyclotomic_field(8)
        x = K.add(K.zeta, K.inv(K.zeta))
        f = minimal_polynomial(tuple(x), A)
        assert f == [Fraction(-2), Fraction(0), Fraction(1)]

    def test_divides_characteristic_polynomial(self):
        A = group_ring([4], base="Q")
        for i in range(A.rank):
            f = minimal_polynomial(A.basis_vector(i), A)
            # char poly of multiplication matrix via determinant would work;
            # sufficient: min poly degree <= rank and annihilates x
            val = A.zero()
            x = A.basis_vector(i)
            acc = A.unit
            for c in f:
                val = A.add(val, A.scale(acc, c))
                acc = A.mul(acc, x)
            assert val == A.zero()


class TestTensor:
    def test_trivial_extension(self):
        A = sqrt_order(2, base="Q")
        ext = tensor_cyclotomic(A, 1)
        assert ext.extended.rank == A.rank
        assert ext.embed == Matrix.identity(2)

    def test_q_tensor_four_is_gauss(self):
        A = rational_algebra()
        ext = tensor_cyclotomic(A, 4)
        assert ext.extended.rank == 2
        spec = spectrum(ext.extended)
        assert len(spec) == 1
        assert spec.factors[0].degree == 2

    def test_retract_embed_identity(self):
        A = sqrt_order(2, base="Q")
        ext = tensor_cyclotomic(A, 8)
        assert ext.retract * ext.embed == Matrix.identity(2)

    def test_sqrt2_tensor_zeta8_spectrum(self):
        # Q(sqrt2) embeds in Q(zeta_8), so the tensor is Q(zeta_8)^2:
        # the embedding count 2*4 = 8 forces 2 factors of degree 4
        A = sqrt_order(2, base="Q")
        ext = tensor_cyclotomic(A, 8)
        assert ext.extended.rank == 8
        spec = spectrum(ext.extended)
        assert len(spec) == 2
        assert all(K.degree == 4 for K in spec.factors)
        # each factor is Q(zeta_8): it contains a root of the 8th cyclotomic
        from gradingforge.numberfield import roots_in_field
        from gradingforge.polys import cyclotomic_polynomial
        for K in spec.factors:
            assert len(roots_in_field(cyclotomic_polynomial(8), K)) == 4

    def test_tau_is_ring_action(self):
        A = sqrt_order(2, base="Q")
        ext = tensor_cyclotomic(A, 8)
        E = ext.extended
        t3, t5 = ext.tau(3), ext.tau(5)
        t15 = ext.tau(15 % 8)
        assert t3 * t5 == t15
        # tau_a is a ring homomorphism on a spanning set
        for h in range(E.rank):
            for i in range(E.rank):
                x, y = E.basis_vector(h), E.basis_vector(i)
                lhs = t3.apply(E.mul(x, y))
                rhs = E.mul(t3.apply(x), t3.apply(y))
                assert lhs == rhs

    def test_fixed_points_are_embedded_algebra(self):
        A = sqrt_order(2, base="Q")
        ext = tensor_cyclotomic(A, 4)
        E = ext.extended
        # solve the fixed-point system for all tau_a simultaneously
        stack = None
        for a in (3,):
            M = ext.tau(a) - Matrix.identity(E.rank)
            stack = M if stack is None else stack.vstack(M)
        K = kernel_basis(stack)
        assert K.ncols == A.rank
        # fixed space equals the embedded copy of A
        embedded = ext.embed
        for j in range(embedded.ncols):
            v = embedded.col(j)
            assert (stack * Matrix.column(v)).is_zero()


class TestSpectrum:
    def test_q_times_q(self):
        spec = spectrum(q_times_q())
        assert len(spec) == 2
        assert all(K.degree == 1 for K in spec.factors)

    def test_qc4(self):
        spec = spectrum(group_ring([4], base="Q"))
        assert sorted(K.degree for K in spec.factors) == [1, 1, 2]

    def test_not_reduced_rejected(self):
        with pytest.raises(NotReduced):
            spectrum(dual_numbers())

    def test_iso_multiplicative(self):
        E = group_ring([4], base="Q")
        spec = spectrum(E)
        iso = spec.iso_matrix()
        assert sum(K.degree for K in spec.factors) == E.rank
        for h in range(E.rank):
            for i in range(E.rank):
                x, y = E.basis_vector(h), E.basis_vector(i)
                lhs = iso.apply(E.mul(x, y))
                # multiply factor-wise
                rhs = []
                for t, K in enumerate(spec.factors):
                    xt = spec.project(t, x)
                    yt = spec.project(t, y)
                    rhs.extend(K.mul(xt, yt))
                assert list(lhs) == [Fraction(c) for c in rhs]

    def test_zeta8_tensor_square(self):
        # Q(zeta8) tensor Q(zeta8): four factors, each of degree 4
        A = cyclotomic_order(8, base="Q")
        ext = tensor_cyclotomic(A, 8)
        spec = spectrum(ext.extended)
        assert len(spec) == 4
        assert all(K.degree == 4 for K in spec.factors)
        # round-trip through the isomorphism
        iso = spec.iso_matrix()
        assert iso.rank() == 16

    def test_deterministic_order(self):
        a = spectrum(group_ring([4], base="Q"))
        b = spectrum(group_ring([4], base="Q"))
        assert [K.defining for K in a.factors] == [K.defining for K in b.factors]


class TestIdempotents:
    def test_q_times_q(self):
        E = q_times_q()
        idems = primitive_idempotents(E)
        assert sorted(idems) == [(0, 1), (1, 0)]

    def test_field_has_single_idempotent(self):
        E = sqrt_order(2, base="Q")
        assert primitive_idempotents(E) == [E.unit]

    def test_qc4_idempotents(self):
        E = group_ring([4], base="Q")
        idems = primitive_idempotents(E)
        assert len(idems) == 3
        total = E.zero()
        for e in idems:
            assert E.mul(e, e) == e
            total = E.add(total, e)
        assert total == E.unit
        for i, e in enumerate(idems):
            for f in idems[i + 1:]:
                assert E.mul(e, f) == E.zero()


class TestSubsetProjection:
    def test_full_subset(self):
        E = group_ring([2], base="Q")
        spec = spectrum(E)
        basis = Matrix.identity(2)
        E_P, proj, RP_basis, RP = subset_projection(E, spec, basis, [0, 1])
        assert E_P.rank == 2
        assert RP.rank == 2

    def test_single_factor_of_group_ring(self):
        # E = Q[C2] = Q x Q, R = Z[C2]; projecting to one factor gives Z
        E = group_ring([2], base="Q")
        spec = spectrum(E)
        basis = Matrix.identity(2)
        E_P, proj, RP_basis, RP = subset_projection(E, spec, basis, [0])
        assert E_P.rank == 1
        assert RP.rank == 1
        # image lattice of span{(1,1),(1,-1)} under a coordinate projection is Z
        assert RP_basis == Matrix([[1]])

    def test_product_splits(self):
        A = sqrt_order(2, base="Q")
        E = product_algebra(A, A)
        spec = spectrum(E)
        basis = Matrix.identity(4)
        E_P, proj, RP_basis, RP = subset_projection(E, spec, basis, [0])
        assert E_P.rank == 2
        # R_P is Z[sqrt2] in the power basis of the factor
        assert RP.rank == 2
        f = minimal_polynomial(RP.rational().basis_vector(1), RP.rational())
        assert degree(f) == 2
