# -*- coding: utf-8 -*-
#
# Copyright (c) 2018 Tomas Hozza
#
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in all
# copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.

import json
import random

import pytest

from sympy.polys.domains import QQ

from leibnizaut import morphisms
from leibnizaut.algebra import abelian_algebra, right_multiplication
from leibnizaut.exactnum import Matrix, ShapeError, multiply, random_scalar
from leibnizaut.families import AutParams, FamilyId, aut_matrix, build, param_count, random_params, \
    recover_params
from leibnizaut.morphisms import LinearMap, MapFormatError, NotAutomorphismError, NotDerivationError, \
    NotNilpotentError, derivation_space, exp_derivation, inner_derivations, is_automorphism, is_derivation, \
    is_homomorphism, matrix_bracket


def is_nilpotent_matrix(d):
    power = d
    for _ in range(d.rows):
        power = multiply(power, d)
    return power.is_zero()


@pytest.fixture(scope="module")
def derivation_spaces():
    spaces = {}
    for family in FamilyId:
        first = 1 if family == FamilyId.R0 else 4
        for n in range(first, 13):
            a = build(family, n)
            spaces[(family, n)] = a, derivation_space(a)
    return spaces


class TestLinearMap:

    @staticmethod
    def test_json_form():
        m = LinearMap(Matrix.from_rows([[1, 0], ["1/2", 1]]))
        data = m.to_dict()
        assert data == {"dim": 2, "columns": [["1", "1/2"], ["0", "1"]]}
        assert LinearMap.from_dict(data) == m

    @staticmethod
    def test_random_json_round_trip():
        rng = random.Random(29)
        for _ in range(100):
            dim = rng.randint(1, 6)
            m = LinearMap(Matrix.from_rows([[random_scalar(rng) for _ in range(dim)] for _ in range(dim)]))
            assert LinearMap.from_dict(json.loads(json.dumps(m.to_dict()))) == m

    @staticmethod
    def test_format_errors():
        with pytest.raises(MapFormatError):
            LinearMap.from_dict({"dim": 2})
        with pytest.raises(MapFormatError):
            LinearMap.from_dict({"dim": 2, "columns": [["1", "0"]]})
        with pytest.raises(MapFormatError):
            LinearMap.from_dict({"dim": 1, "columns": [["x"]]})
        with pytest.raises(ShapeError):
            LinearMap(Matrix.zeros(2, 3))


class TestHomomorphism:

    @staticmethod
    def test_zero_map():
        a = build(FamilyId.R0, 3)
        assert is_homomorphism(a, Matrix.zeros(4, 4)) == (True, None)
        assert not is_automorphism(a, Matrix.zeros(4, 4))

    @staticmethod
    def test_closed_form_is_homomorphism():
        a = build(FamilyId.R0, 3)
        m = aut_matrix(FamilyId.R0, 3, AutParams(FamilyId.R0, alpha=1, beta=1))
        assert is_homomorphism(a, m, random.Random(0), 10) == (True, None)
        assert is_automorphism(a, LinearMap(m))

    @staticmethod
    def test_counterexample():
        a = build(FamilyId.R0, 3)
        m = Matrix.from_rows([[1, 0, 0, 0], [0, 2, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
        # phi([e1, e1]) = e2 but [phi(e1), phi(e1)] = 4e2
        assert is_homomorphism(a, m) == (False, (1, 1))
        assert not is_automorphism(a, m)

    @staticmethod
    def test_identity_and_random_r2():
        rng = random.Random(1)
        a = build(FamilyId.R2, 5)
        assert is_automorphism(a, Matrix.identity(7))
        for _ in range(10):
            assert is_automorphism(a, aut_matrix(FamilyId.R2, 5, random_params(FamilyId.R2, rng)), rng, 5)

    @staticmethod
    def test_shape_mismatch():
        with pytest.raises(ShapeError):
            is_homomorphism(build(FamilyId.R0, 3), Matrix.identity(3))


class TestDerivations:

    @staticmethod
    def test_abelian():
        for n in range(1, 4):
            assert derivation_space(abelian_algebra(n)).dimension == n * n

    @staticmethod
    def test_examples():
        assert derivation_space(build(FamilyId.R0, 3)).dimension == 2
        assert derivation_space(build(FamilyId.R2, 4)).dimension == 4

    @staticmethod
    def test_dimension_matches_parameter_count(derivation_spaces):
        for (family, n), (a, basis) in derivation_spaces.items():
            assert basis.dimension == param_count(family), (family, n)
            for d in basis.elements:
                assert is_derivation(a, d)
            for d in inner_derivations(a):
                assert is_derivation(a, d)
                assert basis.contains(d)

    @staticmethod
    def test_derivations_form_a_lie_algebra():
        a = build(FamilyId.R1, 5)
        basis = derivation_space(a)
        for d1 in basis.elements:
            for d2 in basis.elements:
                assert basis.contains(matrix_bracket(d1, d2))

    @staticmethod
    def test_not_a_derivation():
        a = build(FamilyId.R0, 3)
        assert not is_derivation(a, Matrix.identity(4))
        assert not derivation_space(a).contains(Matrix.identity(4))
        with pytest.raises(NotDerivationError):
            exp_derivation(a, Matrix.identity(4))


class TestExpDerivation:

    @staticmethod
    def test_zero():
        a = build(FamilyId.R0, 3)
        assert exp_derivation(a, Matrix.zeros(4, 4)) == LinearMap(Matrix.identity(4))

    @staticmethod
    def test_shift_of_r0():
        a = build(FamilyId.R0, 3)
        shift = right_multiplication(a, a.basis_vector(1))
        m = exp_derivation(a, shift)
        assert is_automorphism(a, m)
        assert recover_params(FamilyId.R0, 3, m.matrix) == AutParams(FamilyId.R0, alpha=1, beta=1)

    @staticmethod
    def test_nilpotent_basis_element_of_r0():
        a = build(FamilyId.R0, 3)
        nilpotent = [d for d in derivation_space(a).elements if is_nilpotent_matrix(d)]
        assert nilpotent
        for d in nilpotent:
            params = recover_params(FamilyId.R0, 3, exp_derivation(a, d).matrix)
            assert params.beta == 1

    @staticmethod
    def test_shift_of_r1():
        a = build(FamilyId.R1, 5)
        m = exp_derivation(a, right_multiplication(a, a.basis_vector(0)))
        assert recover_params(FamilyId.R1, 5, m.matrix) == AutParams(FamilyId.R1, alpha=1, beta=1, gamma=-1)

    @staticmethod
    def test_exp_of_nilpotent_derivations_is_automorphism(derivation_spaces):
        for (family, n), (a, basis) in derivation_spaces.items():
            candidates = list(basis.elements) + inner_derivations(a)
            nilpotent = [d for d in candidates if is_nilpotent_matrix(d)]
            assert nilpotent, (family, n)
            for d in nilpotent:
                for t in (QQ(1), QQ(-2, 3)):
                    m = exp_derivation(a, d.scale(t))
                    assert is_automorphism(a, m)
                    assert recover_params(family, n, m.matrix).family == family

    @staticmethod
    def test_result_is_checked(monkeypatch):
        a = build(FamilyId.R0, 3)
        shift = right_multiplication(a, a.basis_vector(1))
        monkeypatch.setattr(morphisms, "is_automorphism", lambda algebra, m: False)
        with pytest.raises(NotAutomorphismError):
            exp_derivation(a, shift)

    @staticmethod
    def test_diagonal_derivation_is_not_nilpotent():
        a = build(FamilyId.R0, 3)
        diagonal = right_multiplication(a, a.basis_vector(0))
        assert is_derivation(a, diagonal)
        with pytest.raises(NotNilpotentError):
            exp_derivation(a, diagonal)
