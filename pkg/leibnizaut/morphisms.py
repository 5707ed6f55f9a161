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

"""
Linear maps of an algebra, homomorphism and automorphism checks, the
derivation algebra and the exponential of nilpotent derivations.
"""

import itertools
import random

from sympy.polys.domains import QQ

from leibnizaut.algebra import bracket, right_multiplication
from leibnizaut.exactnum import Matrix, ScalarParseError, ShapeError, SingularError, format_scalar, invert, \
    multiply, nullspace, random_scalar
from leibnizaut.log import log


class MapFormatError(Exception):
    pass


class NotDerivationError(Exception):
    pass


class NotNilpotentError(Exception):
    pass


class NotAutomorphismError(Exception):
    pass


class LinearMap(object):
    """
    Square matrix acting on the coordinates of an algebra; column i is the
    image of basis vector i.
    """

    __slots__ = "matrix",

    def __init__(self, matrix):
        if matrix.rows != matrix.cols:
            raise ShapeError("linear map of an algebra needs a square matrix, got {}x{}".format(matrix.rows,
                                                                                               matrix.cols))
        self.matrix = matrix

    @property
    def dim(self):
        return self.matrix.rows

    def image(self, i):
        return self.matrix.column(i)

    def apply(self, vector):
        return self.matrix.apply(vector)

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return self.matrix == other.matrix

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    __hash__ = None

    def __str__(self):
        return "<LinearMap(id={} dim={})>".format(id(self), self.dim)

    def to_dict(self):
        return {
            "dim": self.dim,
            "columns": [[format_scalar(c) for c in self.image(i)] for i in range(self.dim)],
        }

    @staticmethod
    def from_dict(data):
        if not isinstance(data, dict):
            raise MapFormatError("linear map must be a JSON object")
        try:
            dim, columns = data["dim"], data["columns"]
        except KeyError:
            raise MapFormatError("linear map must have 'dim' and 'columns' defined")
        if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
            raise MapFormatError("'dim' must be a non-negative integer, got '{}'".format(dim))
        if not isinstance(columns, list) or len(columns) != dim:
            raise MapFormatError("linear map of dimension {} needs {} columns".format(dim, dim))
        for i, column in enumerate(columns):
            if not isinstance(column, list) or len(column) != dim:
                raise MapFormatError("column {} must be a list of {} rational numbers".format(i, dim))
            if not all(isinstance(c, (str, int)) and not isinstance(c, bool) for c in column):
                raise MapFormatError("column {} must hold rational numbers as strings or integers".format(i))
        try:
            return LinearMap(Matrix.from_columns(columns, dim))
        except ScalarParseError as e:
            raise MapFormatError(str(e))


def _as_matrix(m):
    return m.matrix if isinstance(m, LinearMap) else m


def _check_square(a, m):
    if m.shape != (a.dim, a.dim):
        raise ShapeError("{}x{} matrix does not act on an algebra of dimension {}".format(m.rows, m.cols, a.dim))


def is_homomorphism(a, m, rng=None, smoke_pairs=0):
    """
    Check m([b_i, b_j]) = [m(b_i), m(b_j)] on every basis pair.

    Random vector pairs drawn from ``rng`` are tried afterwards as an
    advisory smoke test; they never change the verdict.

    :return: tuple (True, None) or (False, (i, j)) with the first failing pair
    """
    m = _as_matrix(m)
    _check_square(a, m)
    images = [m.column(i) for i in range(a.dim)]
    for i, j in itertools.product(range(a.dim), repeat=2):
        lhs = m.apply(a.product(i, j))
        rhs = bracket(a, images[i], images[j])
        if lhs != rhs:
            log.debug("homomorphism condition fails on (%s, %s)", a.basis_labels[i], a.basis_labels[j])
            return False, (i, j)

    if smoke_pairs and a.dim:
        rng = rng if rng is not None else random.Random(0)
        for _ in range(smoke_pairs):
            u = tuple(random_scalar(rng) for _ in range(a.dim))
            v = tuple(random_scalar(rng) for _ in range(a.dim))
            if m.apply(bracket(a, u, v)) != bracket(a, m.apply(u), m.apply(v)):
                log.warning("random pair violates the homomorphism condition although all basis pairs pass")
                break
    return True, None


def is_automorphism(a, m, rng=None, smoke_pairs=0):
    m = _as_matrix(m)
    ok, _ = is_homomorphism(a, m, rng, smoke_pairs)
    if not ok:
        return False
    try:
        invert(m)
    except SingularError:
        log.debug("map is a homomorphism but it is singular")
        return False
    return True


def is_derivation(a, d):
    """
    Check D([b_i, b_j]) = [D(b_i), b_j] + [b_i, D(b_j)] on every basis pair.
    """
    d = _as_matrix(d)
    _check_square(a, d)
    images = [d.column(i) for i in range(a.dim)]
    for i, j in itertools.product(range(a.dim), repeat=2):
        lhs = d.apply(a.product(i, j))
        first = bracket(a, images[i], a.basis_vector(j))
        second = bracket(a, a.basis_vector(i), images[j])
        if lhs != tuple(x + y for x, y in zip(first, second)):
            log.debug("derivation condition fails on (%s, %s)", a.basis_labels[i], a.basis_labels[j])
            return False
    return True


class DerivationBasis(object):
    """
    Basis of Der(L) as a list of matrices.
    """

    __slots__ = "elements", "dim"

    def __init__(self, elements, dim):
        self.elements = list(elements)
        self.dim = dim

    @property
    def dimension(self):
        return len(self.elements)

    def contains(self, d):
        """
        Whether a matrix lies in the span of the basis.
        """
        d = _as_matrix(d)
        size = self.dim * self.dim
        columns = [_flatten(e) for e in self.elements] + [_flatten(d)]
        system = Matrix.from_columns(columns, size)
        # d is in the span iff the last column is not a pivot column
        kernel = nullspace(system)
        return any(v[len(self.elements), 0] for v in kernel)

    def __str__(self):
        return "<DerivationBasis(id={} dimension={} dim={})>".format(id(self), self.dimension, self.dim)


def _flatten(m):
    return [m[r, c] for r in range(m.rows) for c in range(m.cols)]


def derivation_space(a):
    """
    Solve the linear system D([b_i, b_j]) - [D(b_i), b_j] - [b_i, D(b_j)] = 0
    in the dim^2 unknowns D[r][c]; unknown r*dim + c.

    :return: DerivationBasis, one element per free column of the system
    """
    dim = a.dim
    dod = {}
    for i, j in itertools.product(range(dim), repeat=2):
        rows = {}

        def add(k, unknown, value):
            row = rows.setdefault(k, {})
            row[unknown] = row.get(unknown, QQ.zero) + value

        # D([b_i, b_j])_k
        for m, c in a.product_terms(i, j):
            for k in range(dim):
                add(k, k * dim + m, c)
        # [D(b_i), b_j]_k, summed over D[r][i] b_r
        for r, terms in a.right_factors(j):
            for k, c in terms:
                add(k, r * dim + i, -c)
        # [b_i, D(b_j)]_k
        for r, terms in a.left_factors(i):
            for k, c in terms:
                add(k, r * dim + j, -c)

        for k, row in rows.items():
            row = {unknown: v for unknown, v in row.items() if v}
            if row:
                dod[len(dod)] = row

    system = Matrix(dod, len(dod), dim * dim)
    log.debug("derivation system of %s has %d equations", a, system.rows)
    elements = []
    for v in nullspace(system):
        entries = {}
        for r in range(dim):
            row = {c: v[r * dim + c, 0] for c in range(dim) if v[r * dim + c, 0]}
            if row:
                entries[r] = row
        element = Matrix(entries, dim, dim)
        if not is_derivation(a, element):
            raise NotDerivationError("solution of the derivation system fails the derivation condition")
        elements.append(element)
    return DerivationBasis(elements, dim)


def inner_derivations(a):
    """
    Right multiplications R_{b_z} for every basis vector.
    """
    return [right_multiplication(a, a.basis_vector(z)) for z in range(a.dim)]


def matrix_bracket(d1, d2):
    """
    Commutator d1*d2 - d2*d1.
    """
    d1, d2 = _as_matrix(d1), _as_matrix(d2)
    return multiply(d1, d2) - multiply(d2, d1)


def exp_derivation(a, d):
    """
    exp(D) = sum D^m / m! for a nilpotent derivation D. The result is checked
    to be an automorphism before it is returned.
    """
    d = _as_matrix(d)
    _check_square(a, d)
    if not is_derivation(a, d):
        raise NotDerivationError("matrix is not a derivation of {}".format(a))
    total = Matrix.identity(a.dim)
    term = Matrix.identity(a.dim)
    for m in range(1, a.dim + 2):
        term = multiply(term, d).scale(QQ(1, m))
        if term.is_zero():
            result = LinearMap(total)
            if not is_automorphism(a, result):
                raise NotAutomorphismError("exponential of a derivation of {} is not an automorphism".format(a))
            return result
        total = total + term
    raise NotNilpotentError("derivation of {} is not nilpotent".format(a))
