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
Exact rational scalars and matrices.

Scalars are elements of the sympy ``QQ`` domain. Matrices are immutable
wrappers around sparse ``DomainMatrix`` objects over ``QQ``, only nonzero
entries are stored.
"""

import re
from fractions import Fraction

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from leibnizaut.log import log


class ShapeError(Exception):
    pass


class SingularError(Exception):
    pass


class ScalarParseError(Exception):
    pass


SCALAR_RE = re.compile(r'^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$')


def parse_scalar(text):
    """
    Parse "p/q", "-p/q" or "p" into a canonical Scalar.

    :param text: textual rational number
    :return: QQ element
    """
    match = SCALAR_RE.match(text)
    if match is None:
        raise ScalarParseError("'{}' is not a rational number of the form p/q".format(text))
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) is not None else 1
    if denominator == 0:
        raise ScalarParseError("'{}' has a zero denominator".format(text))
    return QQ(numerator, denominator)


def scalar(value):
    """
    Convert an int, a Fraction, a textual "p/q" or a QQ element to a Scalar.
    """
    if isinstance(value, str):
        return parse_scalar(value)
    if isinstance(value, bool):
        raise ScalarParseError("'{}' is not a rational number".format(value))
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if QQ.of_type(value):
        return value
    raise ScalarParseError("'{}' of type {} is not a rational number".format(value, type(value).__name__))


def format_scalar(value):
    """
    Canonical textual form, "p" for integers and "p/q" otherwise.
    """
    value = scalar(value)
    numerator, denominator = int(value.numerator), int(value.denominator)
    if denominator == 1:
        return str(numerator)
    return "{}/{}".format(numerator, denominator)


def random_scalar(rng, bound=5, nonzero=False):
    """
    Draw a small random rational p/q with |p| <= bound and 1 <= q <= bound.

    :param rng: random.Random instance
    :param bound: bound for numerator and denominator
    :param nonzero: redraw until the value is nonzero
    """
    while True:
        value = QQ(rng.randint(-bound, bound), rng.randint(1, bound))
        if value or not nonzero:
            return value


def _clean(dod):
    cleaned = {}
    for i, row in dod.items():
        row = {j: v for j, v in row.items() if v}
        if row:
            cleaned[i] = row
    return cleaned


class Matrix(object):
    """
    Immutable rows x cols matrix of Scalars.
    """

    __slots__ = "_dod", "rows", "cols"

    def __init__(self, dod, rows, cols):
        if rows < 0 or cols < 0:
            raise ShapeError("matrix shape must not be negative, got {}x{}".format(rows, cols))
        checked = {}
        for i, row in dod.items():
            if not 0 <= i < rows:
                raise ShapeError("row index {} out of range for {}x{} matrix".format(i, rows, cols))
            checked_row = {}
            for j, v in row.items():
                if not 0 <= j < cols:
                    raise ShapeError("column index {} out of range for {}x{} matrix".format(j, rows, cols))
                v = scalar(v)
                if v:
                    checked_row[j] = v
            if checked_row:
                checked[i] = checked_row
        self._dod = checked
        self.rows = rows
        self.cols = cols

    @classmethod
    def _trusted(cls, dod, rows, cols):
        # dod already holds nonzero QQ entries only
        m = cls.__new__(cls)
        m._dod = dod
        m.rows = rows
        m.cols = cols
        return m

    @classmethod
    def from_rows(cls, rows, cols=None):
        rows = [list(row) for row in rows]
        if cols is None:
            if not rows:
                raise ShapeError("number of columns of an empty matrix must be given")
            cols = len(rows[0])
        for i, row in enumerate(rows):
            if len(row) != cols:
                raise ShapeError("row {} has {} entries, expected {}".format(i, len(row), cols))
        return cls({i: dict(enumerate(row)) for i, row in enumerate(rows)}, len(rows), cols)

    @classmethod
    def from_columns(cls, columns, rows=None):
        columns = [list(column) for column in columns]
        if rows is None:
            if not columns:
                raise ShapeError("number of rows of an empty matrix must be given")
            rows = len(columns[0])
        dod = {}
        for j, column in enumerate(columns):
            if len(column) != rows:
                raise ShapeError("column {} has {} entries, expected {}".format(j, len(column), rows))
            for i, v in enumerate(column):
                dod.setdefault(i, {})[j] = v
        return cls(dod, rows, len(columns))

    @classmethod
    def zeros(cls, rows, cols):
        return cls({}, rows, cols)

    @classmethod
    def identity(cls, n):
        return cls._trusted({i: {i: QQ.one} for i in range(n)}, n, n)

    @classmethod
    def from_domain_matrix(cls, dm):
        rows, cols = dm.shape
        sdm = dm.convert_to(QQ).to_sparse().rep
        return cls._trusted(_clean(sdm), rows, cols)

    def to_domain_matrix(self):
        return DomainMatrix({i: dict(row) for i, row in self._dod.items()}, (self.rows, self.cols), QQ)

    @property
    def shape(self):
        return self.rows, self.cols

    def __getitem__(self, index):
        i, j = index
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise ShapeError("index ({}, {}) out of range for {}x{} matrix".format(i, j, self.rows, self.cols))
        return self._dod.get(i, {}).get(j, QQ.zero)

    def row(self, i):
        row = self._dod.get(i, {})
        return tuple(row.get(j, QQ.zero) for j in range(self.cols))

    def column(self, j):
        return tuple(self._dod.get(i, {}).get(j, QQ.zero) for i in range(self.rows))

    def nonzero_entries(self):
        """
        Iterate over (i, j, value) of the nonzero entries in row-major order.
        """
        for i in sorted(self._dod):
            row = self._dod[i]
            for j in sorted(row):
                yield i, j, row[j]

    @property
    def entries(self):
        return tuple(self.row(i) for i in range(self.rows))

    def is_zero(self):
        return not self._dod

    def transpose(self):
        dod = {}
        for i, row in self._dod.items():
            for j, v in row.items():
                dod.setdefault(j, {})[i] = v
        return Matrix._trusted(dod, self.cols, self.rows)

    def scale(self, factor):
        factor = scalar(factor)
        if not factor:
            return Matrix.zeros(self.rows, self.cols)
        return Matrix._trusted({i: {j: v * factor for j, v in row.items()} for i, row in self._dod.items()},
                               self.rows, self.cols)

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape:
            raise ShapeError("can not add {}x{} and {}x{} matrices".format(self.rows, self.cols,
                                                                          other.rows, other.cols))
        dod = {i: dict(row) for i, row in self._dod.items()}
        for i, row in other._dod.items():
            target = dod.setdefault(i, {})
            for j, v in row.items():
                target[j] = target.get(j, QQ.zero) + v
        return Matrix._trusted(_clean(dod), self.rows, self.cols)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self + (-other)

    def __matmul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return multiply(self, other)

    def apply(self, vector):
        """
        Matrix-vector product, the vector given as a sequence of Scalars.
        """
        vector = tuple(vector)
        if len(vector) != self.cols:
            raise ShapeError("vector of length {} does not fit a {}x{} matrix".format(len(vector), self.rows,
                                                                                       self.cols))
        result = [QQ.zero] * self.rows
        for i, row in self._dod.items():
            total = QQ.zero
            for j, v in row.items():
                if vector[j]:
                    total += v * vector[j]
            result[i] = total
        return tuple(result)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._dod == other._dod

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    __hash__ = None

    def __str__(self):
        return "<Matrix(id={} shape={}x{} nonzero={})>".format(id(self), self.rows, self.cols,
                                                             sum(len(row) for row in self._dod.values()))

    def __repr__(self):
        return "Matrix.from_rows({!r})".format([[format_scalar(v) for v in row] for row in self.entries])


def multiply(a, b):
    """
    Exact matrix product a*b.
    """
    if a.cols != b.rows:
        raise ShapeError("can not multiply {}x{} by {}x{} matrix".format(a.rows, a.cols, b.rows, b.cols))
    if a.is_zero() or b.is_zero():
        return Matrix.zeros(a.rows, b.cols)
    return Matrix.from_domain_matrix(a.to_domain_matrix().matmul(b.to_domain_matrix()))


def rref(m):
    """
    Reduced row echelon form.

    :param m: Matrix
    :return: tuple (reduced Matrix, rank, list of pivot columns)
    """
    if m.is_zero():
        return m, 0, []
    reduced, pivots = m.to_domain_matrix().rref()
    pivots = list(pivots)
    log.debug("rref of %dx%d matrix has rank %d", m.rows, m.cols, len(pivots))
    return Matrix.from_domain_matrix(reduced), len(pivots), pivots


def rank(m):
    return rref(m)[1]


def nullspace(m):
    """
    Basis of {v : m*v = 0}, one column vector per free column of rref(m).

    Free variable f contributes the vector with v[f] = 1, v[pivot] = -R[r][f]
    and zeros elsewhere, so the basis is deterministic.
    """
    reduced, _, pivots = rref(m)
    pivot_set = set(pivots)
    basis = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        dod = {f: {0: QQ.one}}
        for r, p in enumerate(pivots):
            entry = reduced[r, f]
            if entry:
                dod[p] = {0: -entry}
        basis.append(Matrix._trusted(dod, m.cols, 1))
    return basis


def invert(m):
    """
    Exact inverse by reducing the augmented matrix [m | I].
    """
    if m.rows != m.cols:
        raise ShapeError("only square matrices can be inverted, got {}x{}".format(m.rows, m.cols))
    n = m.rows
    dod = {i: dict(row) for i, row in m._dod.items()}
    for i in range(n):
        dod.setdefault(i, {})[n + i] = QQ.one
    reduced, _, pivots = rref(Matrix._trusted(dod, n, 2 * n))
    if pivots[:n] != list(range(n)):
        raise SingularError("{}x{} matrix is singular".format(n, n))
    inverse = {}
    for i in range(n):
        row = {j - n: v for j, v in reduced._dod.get(i, {}).items() if j >= n}
        if row:
            inverse[i] = row
    return Matrix._trusted(inverse, n, n)
