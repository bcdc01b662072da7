import math

import numpy as np
import pytest

from diracwalk import coin, evolve, lattice, pathsum
from diracwalk.exceptions import BudgetError, GroupMismatch, ParameterError, SizeError
from diracwalk.types import dihedral_element, group_algebra_element, walk_parameters

VALID_PAIRS = [(0.4, 0.0), (0.4, math.pi / 6), (0.8, 0.0), (0.8, 0.2), (0.5, 1.0)]

R_ = dihedral_element.DihedralElement.rotation
S_ = dihedral_element.DihedralElement.reflection


def _walk(R, rho):
    params = walk_parameters.WalkParameters(R, rho)
    return params, coin.solve_coefficients(params)


def _element(n, terms):
    return group_algebra_element.GroupAlgebraElement.from_terms(n, terms)


def _amplitude_table(entries):
    return {(entry.site, entry.spin): entry.amplitude for entry in entries}


def test_enumerate_paths_zero_steps():
    params, c = _walk(0.8, 0.2)
    entries = pathsum.enumerate_paths(c, params, 0, 5, 7, "minus")
    assert len(entries) == 1
    assert (entries[0].site, entries[0].spin) == (2, "minus")
    assert entries[0].amplitude == 1.0
    assert entries[0].path_count == 1


def test_enumerate_paths_massless_single_step():
    params, c = _walk(0.0, 0.0)
    entries = pathsum.enumerate_paths(c, params, 1, 8, 0, "plus")
    nonzero = [entry for entry in entries if abs(entry.amplitude) > 0]
    assert len(nonzero) == 1
    assert (nonzero[0].site, nonzero[0].spin) == (1, "plus")
    assert nonzero[0].amplitude == 1.0
    # Zero-weight strings are still counted
    assert sum(entry.path_count for entry in entries) == 4


def test_enumerate_paths_counts_every_string():
    params, c = _walk(0.8, 0.2)
    entries = pathsum.enumerate_paths(c, params, 2, 8, 3, "plus")
    assert sum(entry.path_count for entry in entries) == 16
    # Ordered by site, then spin
    keys = [(entry.site, pathsum.SPINS.index(entry.spin)) for entry in entries]
    assert keys == sorted(keys)


def test_enumerate_paths_matches_three_steps_of_stencil():
    params, c = _walk(0.8, 0.2)
    field = lattice.set_amplitude(lattice.zero_field(8), 4, 0.0, 1.0)
    evolved = evolve.evolve_field(field, c, params, 3)
    table = _amplitude_table(pathsum.enumerate_paths(c, params, 3, 8, 4, "minus"))
    for site in range(8):
        plus, minus = evolved.at(site)
        assert abs(table.get((site, "plus"), 0j) - plus) <= 1e-12
        assert abs(table.get((site, "minus"), 0j) - minus) <= 1e-12


@pytest.mark.parametrize("R, rho", VALID_PAIRS)
@pytest.mark.parametrize("n", [3, 7, 10])
@pytest.mark.parametrize("spin", pathsum.SPINS)
def test_enumerate_paths_agrees_with_stencil(R, rho, n, spin):
    params, c = _walk(R, rho)
    start = lattice.set_amplitude(
        lattice.zero_field(n), 1, 1.0 if spin == "plus" else 0.0, 1.0 if spin == "minus" else 0.0
    )
    field = start
    for t in range(1, 7):
        field = evolve.step_stencil(field, c, params)
        table = _amplitude_table(pathsum.enumerate_paths(c, params, t, n, 1, spin))
        for site in range(n):
            plus, minus = field.at(site)
            assert abs(table.get((site, "plus"), 0j) - plus) <= 1e-12
            assert abs(table.get((site, "minus"), 0j) - minus) <= 1e-12


def test_enumerate_paths_rejects_bad_arguments():
    params, c = _walk(0.8, 0.2)
    with pytest.raises(BudgetError):
        pathsum.enumerate_paths(c, params, 13, 8, 0, "plus")
    with pytest.raises(ParameterError):
        pathsum.enumerate_paths(c, params, -1, 8, 0, "plus")
    with pytest.raises(SizeError):
        pathsum.enumerate_paths(c, params, 2, 2, 0, "plus")
    with pytest.raises(ParameterError):
        pathsum.enumerate_paths(c, params, 2, 8, 0, "up")


def test_dihedral_group_order():
    group = pathsum.dihedral_group(5)
    assert len(group) == 10
    assert len(set(group)) == 10
    assert [str(g) for g in group[:2]] == ["R_0", "R_1"]
    assert str(group[5]) == "S_0"


def test_dihedral_product_table():
    n = 6
    assert R_(1, n) * R_(n - 1, n) == R_(0, n)
    assert R_(2, n) * S_(3, n) == S_(5, n)
    assert S_(2, n) * R_(3, n) == S_(5, n)
    assert S_(1, n) * S_(1, n) == R_(0, n)
    assert S_(1, n) * S_(4, n) == R_(3, n)
    assert R_(7, n) == R_(1, n)


def test_dihedral_product_rejects_mixed_groups():
    with pytest.raises(GroupMismatch):
        R_(1, 4) * R_(1, 5)
    with pytest.raises(GroupMismatch):
        pathsum.dihedral_representation(R_(1, 4), 5)


def test_dihedral_element_rejects_unknown_kind():
    with pytest.raises(ParameterError):
        dihedral_element.DihedralElement("shear", 1, 4)


@pytest.mark.parametrize("n", range(1, 9))
def test_dihedral_representation_is_homomorphism(n):
    group = pathsum.dihedral_group(n)
    for g in group:
        for h in group:
            product = pathsum.dihedral_representation(g * h, n)
            expected = pathsum.dihedral_representation(g, n) @ pathsum.dihedral_representation(h, n)
            assert np.max(np.abs(product - expected)) <= 1e-12


def test_dihedral_representation_values():
    np.testing.assert_array_equal(pathsum.dihedral_representation(R_(0, 4), 4), np.eye(2))
    np.testing.assert_array_equal(pathsum.dihedral_representation(S_(0, 4), 4), np.diag([1.0, -1.0]))
    np.testing.assert_allclose(pathsum.dihedral_representation(R_(1, 4), 4), [[0, -1], [1, 0]], atol=1e-15)


def test_dihedral_product_is_associative():
    group = pathsum.dihedral_group(5)
    identity = R_(0, 5)
    for g in group:
        assert identity * g == g
        assert g * identity == g
        for h in group:
            for k in group:
                assert (g * h) * k == g * (h * k)


def test_algebra_multiply_annihilating_pair():
    # (R_0 + S_0)(R_0 - S_0) = 0
    n = 6
    left = _element(n, [(R_(0, n), 1), (S_(0, n), 1)])
    right = _element(n, [(R_(0, n), 1), (S_(0, n), -1)])
    product = pathsum.algebra_multiply(left, right)
    assert product.support() == []
    assert np.max(np.abs(pathsum.represent(product))) == 0.0
    np.testing.assert_allclose(
        pathsum.represent(left) @ pathsum.represent(right), np.zeros((2, 2)), atol=1e-15
    )


def test_algebra_multiply_is_associative_and_unital():
    n = 7
    rng = np.random.default_rng(11)
    group = pathsum.dihedral_group(n)

    def random_element():
        picks = rng.choice(len(group), size=4, replace=False)
        return _element(n, [(group[i], complex(*rng.standard_normal(2))) for i in picks])

    a, b, c = random_element(), random_element(), random_element()
    left = pathsum.algebra_multiply(pathsum.algebra_multiply(a, b), c)
    right = pathsum.algebra_multiply(a, pathsum.algebra_multiply(b, c))
    for g in group:
        assert abs(left.coefficient(g) - right.coefficient(g)) <= 1e-12
    identity = group_algebra_element.GroupAlgebraElement.identity(n)
    for g in group:
        assert pathsum.algebra_multiply(identity, a).coefficient(g) == a.coefficient(g)
        assert pathsum.algebra_multiply(a, identity).coefficient(g) == a.coefficient(g)


def test_algebra_multiply_rejects_mixed_groups():
    small = group_algebra_element.GroupAlgebraElement.identity(4)
    large = group_algebra_element.GroupAlgebraElement.identity(5)
    with pytest.raises(GroupMismatch):
        pathsum.algebra_multiply(small, large)
    with pytest.raises(GroupMismatch):
        small + large


def test_group_algebra_arithmetic():
    n = 4
    a = _element(n, [(R_(1, n), 2), (S_(0, n), 1j), (R_(5, n), 1)])
    # Duplicate terms accumulate
    assert a.coefficient(R_(1, n)) == 3
    difference = a - a
    assert difference.support() == []
    assert (a + a).coefficient(S_(0, n)) == 2j
    assert a.scale(2).coefficient(R_(1, n)) == 6
    assert a.support() == [R_(1, n), S_(0, n)]


def test_algebra_power_low_orders():
    n = 8
    assert pathsum.algebra_power(1, 2, 3, 5, 0, n).coeffs == {R_(0, n): 1}
    first = pathsum.algebra_power(1, 2, 3, 5, 1, n)
    assert first.coefficient(R_(0, n)) == 1
    assert first.coefficient(R_(1, n)) == 2
    assert first.coefficient(S_(0, n)) == 3
    assert first.coefficient(S_(1, n)) == 5


def test_algebra_power_second_order():
    a0, a1, b0, b1 = 1, 2, 3, 5
    n = 8
    square = pathsum.algebra_power(a0, a1, b0, b1, 2, n)
    expected = {
        R_(0, n): a0 * a0 + b0 * b0 + b1 * b1,
        R_(1, n): 2 * a0 * a1 + b0 * b1,
        R_(2, n): a1 * a1,
        R_(7, n): b0 * b1,
        S_(0, n): 2 * a0 * b0 + a1 * b1,
        S_(1, n): 2 * a0 * b1 + a1 * b0,
        S_(2, n): a1 * b1,
        S_(7, n): a1 * b0,
    }
    assert set(square.support()) == set(expected)
    for g, value in expected.items():
        assert square.coefficient(g) == value


def test_algebra_power_support_bound():
    n = 64
    for t in range(1, 7):
        power = pathsum.algebra_power(0.3 + 0.1j, -0.7, 1.1j, 0.45 - 0.2j, t, n)
        support = power.support(tol=1e-14)
        assert len(support) <= 4 * t
        for g in support:
            signed = g.index if g.index <= n // 2 else g.index - n
            assert -(t - 1) <= signed <= t


def test_algebra_power_representation_is_matrix_power():
    n = 5
    coefficients = (0.3 + 0.1j, -0.7, 1.1j, 0.45 - 0.2j)
    generator = pathsum.represent(pathsum.algebra_power(*coefficients, 1, n))
    for t in range(5):
        lifted = pathsum.represent(pathsum.algebra_power(*coefficients, t, n))
        assert np.max(np.abs(lifted - np.linalg.matrix_power(generator, t))) <= 1e-12


def test_algebra_power_rejects_negative_exponent():
    with pytest.raises(ParameterError):
        pathsum.algebra_power(1, 0, 0, 0, -1, 4)
