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

from sympy import Symbol
from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyRing

from leibnizaut.families import DimensionError, FamilyId, aut_matrix, build, random_params
from leibnizaut.necessity import Certificate, CertificateFormatError, Constraint, InconsistencyError, \
    MissingVariableError, ReplayError, ResidualError, check_certificate, impose_pair, initial_map, parse_poly, \
    poly_eval, replay, symbolic_aut_images, verify_sufficiency


def gen(ring, name):
    return ring.gens[ring.symbols.index(Symbol(name))]


def find(constraints, var):
    return [c for c in constraints if c.var == var]


@pytest.fixture
def make_ring():

    def _make_ring(*names):
        return PolyRing(list(names), QQ, grlex)

    return _make_ring


@pytest.fixture(scope="module")
def r0_certificates():
    return {n: replay(FamilyId.R0, n) for n in range(1, 9)}


@pytest.fixture(scope="module")
def r1_certificates():
    return {n: replay(FamilyId.R1, n) for n in range(4, 9)}


class TestPolyEval:

    @staticmethod
    def test_examples(make_ring):
        ring = make_ring("a_0_0", "a_1_0", "a_2_0")
        a00, a10, a20 = ring.gens
        assert poly_eval(ring(QQ(3, 2)), {}) == QQ(3, 2)
        assert poly_eval(a10 ** 2 * QQ(1, 2), {"a_1_0": 3}) == QQ(9, 2)
        residual = a00 * a20 - a10 * a10 * QQ(1, 2)
        assert poly_eval(residual, {"a_0_0": 1, "a_1_0": 2, "a_2_0": 2}) == 0

    @staticmethod
    def test_missing_variable(make_ring):
        ring = make_ring("a_0_0", "a_1_0")
        with pytest.raises(MissingVariableError):
            poly_eval(ring.gens[0] + ring.gens[1], {"a_0_0": 1})
        # variables that do not occur need no value
        assert poly_eval(ring.gens[0], {"a_0_0": "1/3"}) == QQ(1, 3)

    @staticmethod
    def test_parse(make_ring):
        ring = make_ring("alpha", "beta", "gamma")
        alpha, beta, gamma = ring.gens
        assert parse_poly("-beta*gamma**2/2 + alpha", ring) == alpha - beta * gamma ** 2 * QQ(1, 2)
        assert parse_poly(str(alpha * beta * QQ(-3, 4)), ring) == alpha * beta * QQ(-3, 4)
        with pytest.raises(CertificateFormatError):
            parse_poly("delta + 1", ring)


class TestImposePair:

    @staticmethod
    def test_zero_pair_changes_nothing():
        s = initial_map(FamilyId.R0, 3)
        before = dict(s.images)
        zero = s.algebra.zero_vector()
        s, constraints = impose_pair(s, s.algebra, zero, zero)
        assert constraints == []
        assert s.solved == {}
        assert s.images == before

    @staticmethod
    def test_r0_first_pair_gives_recurrence():
        s = initial_map(FamilyId.R0, 3)
        a = s.algebra
        s, constraints = impose_pair(s, a, a.basis_vector(0), a.basis_vector(0))
        ring = s.ring
        assert all(c.kind == Constraint.RESIDUAL for c in constraints)
        values = [c.value for c in constraints]
        for i in (2, 3):
            expected = (gen(ring, "a_0_0") * gen(ring, "a_{}_0".format(i))
                        - gen(ring, "a_1_0") * gen(ring, "a_{}_0".format(i - 1)) * QQ(1, i))
            assert expected.monic() in values

    @staticmethod
    def test_r0_second_pair_fixes_e0():
        s = initial_map(FamilyId.R0, 3)
        a = s.algebra
        s, _ = impose_pair(s, a, a.basis_vector(0), a.basis_vector(0))
        s.assume_nonzero("a_1_1")
        s, constraints = impose_pair(s, a, a.basis_vector(0), a.basis_vector(1))
        assert [str(c.value) for c in find(constraints, "a_0_1")] == ["0"]
        assert [str(c.value) for c in find(constraints, "a_0_0")] == ["1"]
        assert find(constraints, "a_0_0")[0].divided_by == ["a_1_1"]

    @staticmethod
    def test_generated_basis_vectors():
        s = initial_map(FamilyId.R0, 3)
        a = s.algebra
        e0, e1, e2 = a.basis_vector(0), a.basis_vector(1), a.basis_vector(2)
        s, constraints = impose_pair(s, a, e1, e1)
        assert constraints == []
        ring = s.ring
        # phi(e2) = [phi(e1), phi(e1)], and [e1, e1] = e2, [e2, e0] = -2e2
        expected = gen(ring, "a_1_1") ** 2 - 2 * gen(ring, "a_2_1") * gen(ring, "a_0_1")
        assert s.basis_image(2)[2] == expected
        assert s.image_of(e2) == s.basis_image(2)
        s, constraints = impose_pair(s, a, e2, e0)
        assert constraints

    @staticmethod
    def test_every_pair_holds_after_closing():
        s = initial_map(FamilyId.R0, 4)
        a = s.algebra
        s, _ = impose_pair(s, a, a.basis_vector(0), a.basis_vector(0))
        s.assume_nonzero("a_1_1")
        s, _ = impose_pair(s, a, a.basis_vector(0), a.basis_vector(1))
        _, remaining = s.close()
        assert remaining == []
        for i in range(a.dim):
            for j in range(a.dim):
                s, constraints = impose_pair(s, a, a.basis_vector(i), a.basis_vector(j))
                assert constraints == [], (i, j)

    @staticmethod
    def test_inconsistency():
        s = initial_map(FamilyId.R0, 2)
        with pytest.raises(InconsistencyError):
            s.settle([s.ring.one])


class TestReplayR0:

    @staticmethod
    def test_matches_closed_form(r0_certificates):
        for n, cert in r0_certificates.items():
            assert cert.match, n

    @staticmethod
    def test_smallest_case(r0_certificates):
        cert = r0_certificates[1]
        ring = cert.final_images[0][0].ring
        alpha, beta = gen(ring, "alpha"), gen(ring, "beta")
        assert cert.final_images == [[ring.one, alpha], [ring.zero, beta]]

    @staticmethod
    def test_steps(r0_certificates):
        cert = r0_certificates[3]
        assert [step.pair for step in cert.steps] == [("e0", "e0"), ("e0", "e1")]
        assert [c.var for c in cert.side_conditions] == ["a_1_1"]
        assert cert.side_conditions[0].before_step == 2
        second = cert.steps[1].constraints
        assert [str(c.value) for c in find(second, "a_0_1")] == ["0"]
        assert [str(c.value) for c in find(second, "a_0_0")] == ["1"]
        # a_3_1 = a_2_0 a_1_1 still involves an unknown
        assert find(second, "a_3_1")[0].kind == Constraint.RELATION
        ring = second[0].value.ring
        closing = {c.var: c.value for c in cert.closing}
        assert closing["a_2_0"] == gen(ring, "a_1_0") ** 2 * QQ(1, 2)
        assert closing["a_3_0"] == gen(ring, "a_1_0") ** 3 * QQ(1, 6)

    @staticmethod
    def test_final_images(r0_certificates):
        from math import factorial
        cert = r0_certificates[4]
        ring = cert.final_images[0][0].ring
        alpha, beta = gen(ring, "alpha"), gen(ring, "beta")
        for i in range(5):
            for j in range(5):
                expected = alpha ** (j - i) * beta ** i * QQ(1, factorial(j - i)) if j >= i else ring.zero
                assert cert.final_images[i][j] == expected

    @staticmethod
    def test_truncated_script_leaves_residuals():
        with pytest.raises(ResidualError):
            replay(FamilyId.R0, 3, script=[('pair', 'e0', 'e0')])


class TestReplayR1:

    @staticmethod
    def test_matches_closed_form(r1_certificates):
        for n, cert in r1_certificates.items():
            assert cert.match, n

    @staticmethod
    def test_proof_table(r1_certificates):
        for n, cert in r1_certificates.items():
            steps = cert.steps
            assert [step.pair for step in steps] == [
                ("e1", "x"), ("e2", "y"), ("e1", "e1"), ("y", "e1"), ("x", "e1"), ("x", "e2"), ("y", "x"),
                ("e2", "y"), ("y", "y"), ("e1", "y"), ("x", "y"), ("e2", "x"),
            ]
            assert [(c.var, c.before_step) for c in cert.side_conditions] == [("a_1_1", 3), ("a_2_2", 3)]

            def solved(step, var):
                return [str(c.value) for c in find(steps[step - 1].constraints, var)
                        if c.kind == Constraint.DETERMINATION]

            assert solved(7, "a_1_{}".format(n + 2)) == ["0"]
            assert solved(8, "a_{0}_{0}".format(n + 2)) == ["1"]
            assert solved(9, "a_{}_{}".format(n, n + 2)) == ["0"]
            assert solved(10, "a_{}_1".format(n)) == ["0"]
            assert solved(11, "a_{}_{}".format(n - 1, n + 1)) == ["0"]
            assert solved(11, "a_{}_{}".format(n, n + 1)) == ["0"]
            assert solved(12, "a_{}_{}".format(n + 2, n + 1)) == ["0"]
            assert solved(5, "a_{0}_{0}".format(n + 1)) == ["1"]

            relation = find(steps[4].constraints, "a_{}_1".format(n))
            assert [c.kind for c in relation] == [Constraint.RELATION]
            ring = relation[0].value.ring
            assert relation[0].value == -gen(ring, "a_1_1") * gen(ring, "a_{}_{}".format(n - 1, n + 1))

    @staticmethod
    def test_e2_recurrence(r1_certificates):
        cert = r1_certificates[6]
        last = cert.steps[-1].constraints
        ring = last[0].value.ring
        a_1_7, a_2_2 = gen(ring, "a_1_7"), gen(ring, "a_2_2")
        assert find(last, "a_3_2")[0].value == -a_1_7 * a_2_2
        assert find(last, "a_4_2")[0].value == a_1_7 ** 2 * a_2_2 * QQ(1, 2)


class TestCertificate:

    @staticmethod
    def test_deterministic(r0_certificates):
        again = replay(FamilyId.R0, 4)
        assert json.dumps(again.to_dict()) == json.dumps(r0_certificates[4].to_dict())

    @staticmethod
    def test_check_certificate(r0_certificates, r1_certificates):
        assert check_certificate(r0_certificates[3])
        parsed = Certificate.from_dict(json.loads(json.dumps(r1_certificates[5].to_dict())))
        assert parsed.to_dict() == r1_certificates[5].to_dict()
        assert check_certificate(parsed)

        tampered = r0_certificates[3].to_dict()
        tampered["final_images"][0][1] = "alpha + 1"
        assert not check_certificate(Certificate.from_dict(tampered))

    @staticmethod
    def test_malformed():
        with pytest.raises(CertificateFormatError):
            Certificate.from_dict({"family": "R0"})
        with pytest.raises(CertificateFormatError):
            Certificate.from_dict({"family": "R2", "n": 4, "steps": [], "final_images": [], "match": True})
        with pytest.raises(CertificateFormatError):
            Certificate.from_dict({"family": "R0", "n": 0, "steps": [], "final_images": [], "match": True})

    @staticmethod
    def test_soundness(r0_certificates, r1_certificates):
        rng = random.Random(99)
        for family, certificates in ((FamilyId.R0, r0_certificates), (FamilyId.R1, r1_certificates)):
            for n, cert in certificates.items():
                if n > 6:
                    continue
                for _ in range(50):
                    params = random_params(family, rng)
                    m = aut_matrix(family, n, params)
                    assignment = dict(zip(params.names, params.values()))
                    for i, column in enumerate(cert.final_images):
                        for j, p in enumerate(column):
                            assert poly_eval(p, assignment) == m[j, i]


class TestReplayErrors:

    @staticmethod
    def test_unsupported():
        with pytest.raises(ReplayError):
            replay(FamilyId.R2, 4)
        with pytest.raises(ReplayError):
            replay(FamilyId.R3, 5)
        with pytest.raises(ReplayError):
            replay(FamilyId.R0, 9)
        with pytest.raises(DimensionError):
            replay(FamilyId.R1, 3)


class TestSufficiency:

    @staticmethod
    def test_closed_forms_are_homomorphisms():
        for family in FamilyId:
            first = 1 if family == FamilyId.R0 else 4
            for n in range(first, 8):
                assert verify_sufficiency(family, n) == [], (family, n)

    @staticmethod
    def test_symbolic_images_specialize():
        images = symbolic_aut_images(FamilyId.R2, 5)
        ring = images[0][0].ring
        m = aut_matrix(FamilyId.R2, 5, random_params(FamilyId.R2, random.Random(4)))
        values = {str(s): v for s, v in zip(ring.symbols, [m[0, 0], m[0, 5], m[1, 1], m[1, 6]])}
        for i, column in enumerate(images):
            for j, p in enumerate(column):
                assert poly_eval(p, values) == m[j, i]
        assert len(images) == build(FamilyId.R2, 5).dim
