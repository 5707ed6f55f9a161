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
Finite-dimensional algebras given by structure constants, and the Leibniz
algebra structure theory the workbench needs: the Leibniz identity check,
subspaces, lower central and derived series, annihilators and restrictions.

Vectors are tuples of Scalars in basis coordinates.
"""

import itertools

from sympy.polys.domains import QQ

from leibnizaut.exactnum import Matrix, ScalarParseError, ShapeError, format_scalar, nullspace, random_scalar, \
    rref, scalar
from leibnizaut.log import log


class AlgebraFormatError(Exception):
    pass


class NotClosedError(Exception):
    pass


class NotNilpotent(Exception):
    pass


class NotSolvable(Exception):
    pass


class Algebra(object):
    """
    Algebra over QQ given by its multiplication table on a basis.

    ``table`` maps a pair of basis indices (i, j) to the coordinates of
    [b_i, b_j]. Pairs missing from the table multiply to zero.
    """

    __slots__ = "dim", "basis_labels", "table", "_terms", "_by_left", "_by_right"

    def __init__(self, dim, basis_labels=None, table=None):
        if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
            raise AlgebraFormatError("dimension must be a non-negative integer, got '{}'".format(dim))
        if basis_labels is None:
            basis_labels = ["e{}".format(i) for i in range(dim)]
        basis_labels = tuple(str(label) for label in basis_labels)
        if len(basis_labels) != dim:
            raise AlgebraFormatError("{} basis labels given for dimension {}".format(len(basis_labels), dim))
        if len(set(basis_labels)) != dim:
            raise AlgebraFormatError("basis labels {} are not distinct".format(list(basis_labels)))

        checked = {}
        for (i, j), coords in (table or {}).items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise AlgebraFormatError("product index ({}, {}) out of range for dimension {}".format(i, j, dim))
            coords = tuple(coords)
            if len(coords) != dim:
                raise AlgebraFormatError("[{}, {}] has {} coordinates, expected {}".format(
                    basis_labels[i], basis_labels[j], len(coords), dim))
            try:
                coords = tuple(scalar(c) for c in coords)
            except ScalarParseError as e:
                raise AlgebraFormatError("[{}, {}]: {}".format(basis_labels[i], basis_labels[j], e))
            if any(coords):
                checked[(i, j)] = coords

        self.dim = dim
        self.basis_labels = basis_labels
        self.table = checked
        self._terms = {pair: tuple((k, c) for k, c in enumerate(coords) if c) for pair, coords in checked.items()}
        self._by_left = {}
        self._by_right = {}
        for (i, j), terms in sorted(self._terms.items()):
            self._by_left.setdefault(i, []).append((j, terms))
            self._by_right.setdefault(j, []).append((i, terms))

    def __str__(self):
        return "<Algebra(id={} dim={} basis={} products={})>".format(
                id(self),
                self.dim,
                list(self.basis_labels),
                len(self.table),
                )

    def __eq__(self, other):
        if not isinstance(other, Algebra):
            return NotImplemented
        return self.dim == other.dim and self.basis_labels == other.basis_labels and self.table == other.table

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    __hash__ = None

    def label_index(self, label):
        try:
            return self.basis_labels.index(label)
        except ValueError:
            raise AlgebraFormatError("unknown basis label '{}', basis is {}".format(label, list(self.basis_labels)))

    def basis_vector(self, i):
        return tuple(QQ.one if k == i else QQ.zero for k in range(self.dim))

    def zero_vector(self):
        return (QQ.zero,) * self.dim

    def product(self, i, j):
        """
        [b_i, b_j] as a coordinate tuple.
        """
        return self.table.get((i, j), self.zero_vector())

    def product_terms(self, i, j):
        """
        Nonzero (k, c_ij^k) pairs of [b_i, b_j].
        """
        return self._terms.get((i, j), ())

    def right_factors(self, j):
        """
        (i, terms) for every i with [b_i, b_j] != 0.
        """
        return self._by_right.get(j, [])

    def left_factors(self, i):
        """
        (j, terms) for every j with [b_i, b_j] != 0.
        """
        return self._by_left.get(i, [])

    def format_vector(self, vector):
        parts = []
        for label, c in zip(self.basis_labels, vector):
            if not c:
                continue
            if c == 1:
                parts.append(label)
            elif c == -1:
                parts.append("-{}".format(label))
            else:
                parts.append("{}*{}".format(format_scalar(c), label))
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"

    def to_dict(self):
        return {
            "dim": self.dim,
            "basis": list(self.basis_labels),
            "table": [
                {"left": i, "right": j, "coords": [format_scalar(c) for c in self.table[(i, j)]]}
                for i, j in sorted(self.table)
            ],
        }

    @staticmethod
    def from_dict(data):
        """
        Build an Algebra from its JSON object form.

        :param data: dict with "dim", optional "basis" and "table" keys
        :return: Algebra
        """
        if not isinstance(data, dict):
            raise AlgebraFormatError("algebra must be a JSON object")
        try:
            dim = data["dim"]
        except KeyError:
            raise AlgebraFormatError("algebra must have a 'dim' defined")
        table = {}
        entries = data.get("table", [])
        if not isinstance(entries, list):
            raise AlgebraFormatError("'table' must be a list of products")
        for entry in entries:
            try:
                left, right, coords = entry["left"], entry["right"], entry["coords"]
            except (KeyError, TypeError):
                raise AlgebraFormatError("table entry '{}' must have 'left', 'right' and 'coords'".format(entry))
            if not all(isinstance(index, int) and not isinstance(index, bool) for index in (left, right)):
                raise AlgebraFormatError("table entry '{}' has non-integer indices".format(entry))
            if not isinstance(coords, list) or not all(isinstance(c, (str, int)) for c in coords):
                raise AlgebraFormatError("table entry '{}' must have a list of rational coordinates".format(entry))
            if (left, right) in table:
                raise AlgebraFormatError("product ({}, {}) is given twice".format(left, right))
            table[(left, right)] = coords
        return Algebra(dim, data.get("basis"), table)


def abelian_algebra(dim):
    return Algebra(dim)


def _check_vector(a, vector):
    vector = tuple(vector)
    if len(vector) != a.dim:
        raise ShapeError("vector of length {} does not belong to an algebra of dimension {}".format(len(vector),
                                                                                                 a.dim))
    return vector


def bracket_with(a, u, v, zero):
    """
    Bilinear extension of the table to coordinate lists over any ring.

    :param zero: zero element of the coefficient ring
    """
    result = [zero] * a.dim
    for (i, j), terms in a._terms.items():
        if not u[i] or not v[j]:
            continue
        c = u[i] * v[j]
        for k, x in terms:
            result[k] = result[k] + c * x
    return result


def bracket(a, u, v):
    """
    [u, v] for coordinate vectors u and v.
    """
    u = _check_vector(a, u)
    v = _check_vector(a, v)
    return tuple(bracket_with(a, u, v, QQ.zero))


def _sub(u, v):
    return tuple(x - y for x, y in zip(u, v))


def _add(u, v):
    return tuple(x + y for x, y in zip(u, v))


def _leibniz_defect(a, x, y, z):
    # [[x,y],z] - [[x,z],y] - [x,[y,z]]
    lhs = bracket(a, bracket(a, x, y), z)
    rhs = _add(bracket(a, bracket(a, x, z), y), bracket(a, x, bracket(a, y, z)))
    return _sub(lhs, rhs)


def check_leibniz(a, rng=None, random_triples=0):
    """
    Check the right Leibniz identity [[x,y],z] = [[x,z],y] + [x,[y,z]] on all
    basis triples. Trilinearity makes the basis check exhaustive.

    :param rng: random.Random used for additional random triples
    :param random_triples: number of random vector triples tried on top, advisory only
    :return: list of (i, j, k, discrepancy) for violating basis triples, empty when Leibniz
    """
    violations = []
    for i, j, k in itertools.product(range(a.dim), repeat=3):
        x, y, z = a.basis_vector(i), a.basis_vector(j), a.basis_vector(k)
        defect = _leibniz_defect(a, x, y, z)
        if any(defect):
            log.debug("Leibniz identity fails on (%s, %s, %s)", a.basis_labels[i], a.basis_labels[j],
                      a.basis_labels[k])
            violations.append((i, j, k, defect))

    if rng is not None and a.dim:
        for _ in range(random_triples):
            x, y, z = [tuple(random_scalar(rng) for _ in range(a.dim)) for _ in range(3)]
            if any(_leibniz_defect(a, x, y, z)) and not violations:
                log.warning("random triple violates the Leibniz identity although all basis triples pass")
    return violations


def is_leibniz(a):
    return not check_leibniz(a)


class Subspace(object):
    """
    Subspace of QQ^ambient_dim kept as the reduced row echelon basis of its
    spanning vectors, so equal subspaces have equal bases.
    """

    __slots__ = "ambient_dim", "_basis", "_pivots"

    def __init__(self, vectors, ambient_dim):
        vectors = [tuple(scalar(c) for c in v) for v in vectors]
        for v in vectors:
            if len(v) != ambient_dim:
                raise ShapeError("vector of length {} does not belong to QQ^{}".format(len(v), ambient_dim))
        self.ambient_dim = ambient_dim
        if vectors:
            reduced, rank, pivots = rref(Matrix.from_rows(vectors, ambient_dim))
            self._basis = tuple(reduced.row(r) for r in range(rank))
            self._pivots = tuple(pivots)
        else:
            self._basis = ()
            self._pivots = ()

    @classmethod
    def zero(cls, ambient_dim):
        return cls([], ambient_dim)

    @classmethod
    def full(cls, ambient_dim):
        return cls([tuple(QQ.one if k == i else QQ.zero for k in range(ambient_dim))
                    for i in range(ambient_dim)], ambient_dim)

    @classmethod
    def coordinate(cls, indices, ambient_dim):
        """
        Span of the standard basis vectors with the given indices.
        """
        return cls([tuple(QQ.one if k == i else QQ.zero for k in range(ambient_dim)) for i in indices],
                   ambient_dim)

    @property
    def rank(self):
        return len(self._basis)

    @property
    def pivots(self):
        return self._pivots

    def vectors(self):
        return list(self._basis)

    def matrix(self):
        return Matrix.from_rows(self._basis, self.ambient_dim)

    def coordinates(self, vector):
        """
        Coordinates of a member vector in the echelon basis.
        """
        return tuple(vector[p] for p in self._pivots)

    def contains(self, vector):
        vector = list(vector)
        if len(vector) != self.ambient_dim:
            raise ShapeError("vector of length {} does not belong to QQ^{}".format(len(vector), self.ambient_dim))
        for row, p in zip(self._basis, self._pivots):
            coefficient = vector[p]
            if coefficient:
                vector = [x - coefficient * y for x, y in zip(vector, row)]
        return not any(vector)

    def is_subspace_of(self, other):
        return all(other.contains(v) for v in self._basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self._basis == other._basis

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    __hash__ = None

    def __str__(self):
        return "<Subspace(id={} dim={} ambient_dim={})>".format(id(self), self.rank, self.ambient_dim)


def subspace_product(a, s, t):
    """
    [S, T], the span of all brackets of basis vectors of S and T.
    """
    vectors = [bracket(a, x, y) for x in s.vectors() for y in t.vectors()]
    return Subspace([v for v in vectors if any(v)], a.dim)


def square(a):
    full = Subspace.full(a.dim)
    return subspace_product(a, full, full)


def _series(a, step):
    full = Subspace.full(a.dim)
    series = [full]
    while series[-1].rank:
        term = step(series[-1], full)
        series.append(term)
        log.debug("series term %d has dimension %d", len(series), term.rank)
        if term == series[-2]:
            break
    return series


def lower_central_series(a):
    """
    L^1 = L, L^(k+1) = [L^k, L]. Stops at the first zero term or after the
    first term equal to its predecessor.
    """
    return _series(a, lambda term, full: subspace_product(a, term, full))


def derived_series(a):
    """
    L^[1] = L, L^[k+1] = [L^[k], L^[k]], with the same stopping rule.
    """
    return _series(a, lambda term, full: subspace_product(a, term, term))


def is_nilpotent(a):
    return lower_central_series(a)[-1].rank == 0


def nilpotency_index(a):
    """
    Smallest s with L^s = 0.
    """
    series = lower_central_series(a)
    if series[-1].rank:
        raise NotNilpotent("lower central series stabilizes at dimension {}".format(series[-1].rank))
    return len(series)


def is_solvable(a):
    return derived_series(a)[-1].rank == 0


def solvability_index(a):
    series = derived_series(a)
    if series[-1].rank:
        raise NotSolvable("derived series stabilizes at dimension {}".format(series[-1].rank))
    return len(series)


def _term_dims(series, count):
    # series is stable after its last term
    return [series[min(i, len(series) - 1)].rank for i in range(count)]


def is_null_filiform(a):
    """
    dim L^i = n + 1 - i for i = 1..n+1, where dim L = n.
    """
    if a.dim == 0:
        return False
    n = a.dim
    return _term_dims(lower_central_series(a), n + 1) == [n + 1 - i for i in range(1, n + 2)]


def is_filiform(a):
    """
    dim L^i = n - i for i = 2..n, where dim L = n.
    """
    n = a.dim
    if n < 2:
        return False
    dims = _term_dims(lower_central_series(a), n)
    return all(dims[i - 1] == n - i for i in range(2, n + 1))


def right_annihilator(a):
    """
    {x : [y, x] = 0 for all y}, the common kernel of all left multiplications.
    """
    if a.dim == 0:
        return Subspace.zero(0)
    dod = {}
    for (u, j), terms in a._terms.items():
        for k, c in terms:
            dod.setdefault(u * a.dim + k, {})[j] = c
    kernel = nullspace(Matrix(dod, a.dim * a.dim, a.dim))
    return Subspace([v.column(0) for v in kernel], a.dim)


def is_ideal(a, s):
    """
    Two-sided ideal test: [S, L] and [L, S] both lie in S.
    """
    for x in s.vectors():
        for i in range(a.dim):
            b = a.basis_vector(i)
            if not s.contains(bracket(a, x, b)) or not s.contains(bracket(a, b, x)):
                return False
    return True


def subalgebra_restrict(a, s):
    """
    The algebra structure on a subspace closed under the bracket.

    The echelon basis of S is used; echelon vectors that are standard basis
    vectors keep their label.
    """
    basis = s.vectors()
    labels = []
    for r, v in enumerate(basis):
        support = [k for k, c in enumerate(v) if c]
        if len(support) == 1 and v[support[0]] == 1:
            labels.append(a.basis_labels[support[0]])
        else:
            labels.append("s{}".format(r))
    table = {}
    for p, x in enumerate(basis):
        for q, y in enumerate(basis):
            w = bracket(a, x, y)
            if not s.contains(w):
                raise NotClosedError("[{}, {}] = {} leaves the subspace".format(labels[p], labels[q],
                                                                                a.format_vector(w)))
            if any(w):
                table[(p, q)] = s.coordinates(w)
    return Algebra(len(basis), labels, table)


def right_multiplication(a, z):
    """
    Matrix of R_z: v -> [v, z]; column j is [b_j, z].
    """
    z = _check_vector(a, z)
    columns = [bracket(a, a.basis_vector(j), z) for j in range(a.dim)]
    return Matrix.from_columns(columns, a.dim)
