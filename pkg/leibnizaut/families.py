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
The solvable Leibniz algebra families R0..R3 with null-filiform or
naturally graded filiform nilradicals, and the closed-form parametrisation
of their automorphism groups.

R0(n) has basis e0..en. R1(n), R2(n) and R3(n) have basis e1..en, x, y,
stored at indices 0..n-1, n and n+1.
"""

import enum
from math import factorial

from sympy.polys.domains import QQ

from leibnizaut.algebra import Algebra, Subspace
from leibnizaut.exactnum import Matrix, ScalarParseError, format_scalar, random_scalar, scalar
from leibnizaut.log import log


class DimensionError(Exception):
    pass


class ParamError(Exception):
    pass


class NotInFamilyError(Exception):
    pass


class FamilyId(enum.Enum):
    R0 = 'R0'
    R1 = 'R1'
    R2 = 'R2'
    R3 = 'R3'

    def __str__(self):
        return self.value


MIN_N = {
    FamilyId.R0: 1,
    FamilyId.R1: 4,
    FamilyId.R2: 4,
    FamilyId.R3: 4,
}

PARAM_NAMES = {
    FamilyId.R0: ('alpha', 'beta'),
    FamilyId.R1: ('alpha', 'beta', 'gamma'),
    FamilyId.R2: ('alpha', 'beta', 'gamma', 'delta'),
    FamilyId.R3: ('alpha', 'beta', 'gamma'),
}

NONZERO_PARAMS = {
    FamilyId.R0: ('beta',),
    FamilyId.R1: ('alpha', 'beta'),
    FamilyId.R2: ('alpha', 'gamma'),
    FamilyId.R3: ('alpha', 'gamma'),
}


def family_id(value):
    if isinstance(value, FamilyId):
        return value
    try:
        return FamilyId(value)
    except ValueError:
        raise ParamError("unknown family '{}', expected one of {}".format(value, [f.value for f in FamilyId]))


def param_names(family):
    return PARAM_NAMES[family_id(family)]


def param_count(family):
    return len(param_names(family))


def dimension(family, n):
    family = family_id(family)
    return n + 1 if family == FamilyId.R0 else n + 2


def check_dimension(family, n):
    family = family_id(family)
    if not isinstance(n, int) or isinstance(n, bool) or n < MIN_N[family]:
        raise DimensionError("{} needs n >= {}, got {}".format(family, MIN_N[family], n))


def basis_labels(family, n):
    family = family_id(family)
    if family == FamilyId.R0:
        return ["e{}".format(i) for i in range(n + 1)]
    return ["e{}".format(i) for i in range(1, n + 1)] + ["x", "y"]


class AutParams(object):
    """
    Parameter tuple of an automorphism of a family, values in the order of
    param_names(family).
    """

    __slots__ = "family", "_values"

    def __init__(self, family, **values):
        family = family_id(family)
        names = PARAM_NAMES[family]
        if set(values) != set(names):
            raise ParamError("{} takes parameters {}, got {}".format(family, list(names), sorted(values)))
        try:
            parsed = tuple(scalar(values[name]) for name in names)
        except ScalarParseError as e:
            raise ParamError(str(e))
        self.family = family
        self._values = parsed
        for name in NONZERO_PARAMS[family]:
            if not self[name]:
                raise ParamError("{} automorphisms need {} != 0, got {}".format(
                    family, " * ".join(NONZERO_PARAMS[family]), self))

    @property
    def names(self):
        return PARAM_NAMES[self.family]

    def values(self):
        return self._values

    def __getitem__(self, name):
        try:
            return self._values[self.names.index(name)]
        except ValueError:
            raise ParamError("{} has no parameter '{}'".format(self.family, name))

    @property
    def alpha(self):
        return self['alpha']

    @property
    def beta(self):
        return self['beta']

    @property
    def gamma(self):
        return self['gamma']

    @property
    def delta(self):
        return self['delta']

    def __eq__(self, other):
        if not isinstance(other, AutParams):
            return NotImplemented
        return self.family == other.family and self._values == other._values

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self.family, self._values))

    def __str__(self):
        return "{}({})".format(self.family, ", ".join(
            "{}={}".format(name, format_scalar(value)) for name, value in zip(self.names, self._values)))

    def to_dict(self):
        return {name: format_scalar(value) for name, value in zip(self.names, self._values)}

    @staticmethod
    def from_dict(family, data):
        if not isinstance(data, dict):
            raise ParamError("parameters must be a JSON object")
        return AutParams(family, **data)


def parse_params(family, text):
    """
    Parse "alpha=1/2,beta=3" into AutParams.
    """
    values = {}
    for item in text.split(','):
        item = item.strip()
        if not item:
            continue
        name, sep, value = item.partition('=')
        if not sep:
            raise ParamError("parameter '{}' must be given as name=p/q".format(item))
        name = name.strip()
        if name in values:
            raise ParamError("parameter '{}' is given twice".format(name))
        values[name] = value.strip()
    return AutParams(family, **values)


def random_params(family, rng, bound=5):
    """
    Random valid parameter tuple with small numerators and denominators.
    """
    family = family_id(family)
    nonzero = NONZERO_PARAMS[family]
    return AutParams(family, **{name: random_scalar(rng, bound, nonzero=name in nonzero)
                                for name in PARAM_NAMES[family]})


class _TableBuilder(object):

    def __init__(self, dim):
        self.dim = dim
        self.table = {}

    def set(self, i, j, k, coefficient=1):
        coords = [0] * self.dim
        coords[k] = coefficient
        self.table[(i, j)] = coords


def build(family, n):
    """
    Multiplication table of R0(n), R1(n), R2(n) or R3(n).
    """
    family = family_id(family)
    check_dimension(family, n)
    dim = dimension(family, n)
    t = _TableBuilder(dim)

    if family == FamilyId.R0:
        for i in range(n):
            t.set(i, 1, i + 1)
        for i in range(1, n + 1):
            t.set(i, 0, i, -i)
    else:
        # e_k is stored at k - 1
        x, y = n, n + 1
        t.set(0, x, 0)
        t.set(x, 0, 0, -1)
        if family == FamilyId.R1:
            for i in range(2, n):
                t.set(i - 1, 0, i)
            for i in range(2, n + 1):
                t.set(i - 1, x, i - 1, i - 1)
                t.set(i - 1, y, i - 1)
        else:
            t.set(0, 0, 2)
            for i in range(3, n):
                t.set(i - 1, 0, i)
            for i in range(3, n + 1):
                t.set(i - 1, x, i - 1, i - 1)
            t.set(1, y, 1)
            if family == FamilyId.R2:
                t.set(y, 1, 1, -1)

    algebra = Algebra(dim, basis_labels(family, n), t.table)
    log.debug("Built %s(%d): %s", family, n, algebra)
    return algebra


def nilradical(family, n):
    """
    span(e_1..e_n), the nilradical of every family.
    """
    family = family_id(family)
    check_dimension(family, n)
    indices = range(1, n + 1) if family == FamilyId.R0 else range(n)
    return Subspace.coordinate(indices, dimension(family, n))


def _sign(k):
    return QQ(-1) if k % 2 else QQ(1)


def _inverse_factorial(k):
    return QQ(1, factorial(k))


def family_images(family, n, values, one):
    """
    Closed-form images phi(b_i) as sparse columns {row: coefficient}.

    Arithmetic only uses ring operations and multiplication by rationals, so
    ``values`` may be Scalars or polynomials in the parameters.

    :param values: parameter values in the order of param_names(family)
    :param one: unit of the coefficient ring
    :return: list of dicts, one per basis vector
    """
    family = family_id(family)
    columns = [dict() for _ in range(dimension(family, n))]

    if family == FamilyId.R0:
        alpha, beta = values
        for i in range(n + 1):
            for j in range(i, n + 1):
                columns[i][j] = alpha ** (j - i) * beta ** i * _inverse_factorial(j - i)
        return columns

    x, y = n, n + 1
    if family == FamilyId.R1:
        alpha, beta, gamma = values
        columns[0][0] = alpha
        for i in range(2, n + 1):
            for j in range(i, n + 1):
                columns[i - 1][j - 1] = (alpha ** (i - 2) * beta * gamma ** (j - i)
                                         * (_sign(j - i) * _inverse_factorial(j - i)))
        columns[x][0] = gamma
        columns[x][x] = one
        columns[y][y] = one
        return columns

    if family == FamilyId.R2:
        alpha, beta, gamma, delta = values
    else:
        alpha, beta, gamma = values
        delta = None
    columns[0][0] = alpha
    for i in range(3, n + 1):
        columns[0][i - 1] = alpha * beta ** (i - 2) * (_sign(i) * _inverse_factorial(i - 2))
    columns[1][1] = gamma
    for i in range(3, n + 1):
        for j in range(i, n + 1):
            columns[i - 1][j - 1] = (alpha ** (i - 1) * beta ** (j - i)
                                     * (_sign(j - i) * _inverse_factorial(j - i)))
    columns[x][0] = beta
    for i in range(3, n + 1):
        columns[x][i - 1] = beta ** (i - 1) * (_sign(i) * _inverse_factorial(i - 1))
    columns[x][x] = one
    if delta is not None:
        columns[y][1] = delta
    columns[y][y] = one
    return columns


def aut_matrix(family, n, params):
    """
    Matrix of the automorphism with the given parameters; column i is the
    image of basis vector i.
    """
    family = family_id(family)
    check_dimension(family, n)
    if params.family != family:
        raise ParamError("parameters {} do not belong to family {}".format(params, family))
    dim = dimension(family, n)
    columns = family_images(family, n, params.values(), QQ.one)
    dod = {}
    for i, column in enumerate(columns):
        for j, value in column.items():
            dod.setdefault(j, {})[i] = value
    return Matrix(dod, dim, dim)


def _recovered_values(family, n, m):
    x, y = n, n + 1
    if family == FamilyId.R0:
        return {'alpha': m[1, 0], 'beta': m[1, 1]}
    if family == FamilyId.R1:
        return {'alpha': m[0, 0], 'beta': m[1, 1], 'gamma': m[0, x]}
    values = {'alpha': m[0, 0], 'beta': m[0, x], 'gamma': m[1, 1]}
    if family == FamilyId.R2:
        values['delta'] = m[1, y]
    return values


def recover_params(family, n, m):
    """
    Read the parameters off their defining entries and check the whole
    matrix against the closed form.
    """
    family = family_id(family)
    check_dimension(family, n)
    dim = dimension(family, n)
    if m.shape != (dim, dim):
        raise NotInFamilyError("{}x{} matrix can not act on {}({}) of dimension {}".format(m.rows, m.cols, family,
                                                                                          n, dim))
    try:
        params = AutParams(family, **_recovered_values(family, n, m))
    except ParamError as e:
        raise NotInFamilyError(str(e))
    expected = aut_matrix(family, n, params)
    if expected != m:
        labels = basis_labels(family, n)
        for i in range(dim):
            for j in range(dim):
                if expected[i, j] != m[i, j]:
                    raise NotInFamilyError(
                        "coefficient of {} in the image of {} is {}, the closed form with {} needs {}".format(
                            labels[i], labels[j], format_scalar(m[i, j]), params, format_scalar(expected[i, j])))
    return params


def compose_params(family, outer, inner):
    """
    Parameters of aut(outer) * aut(inner).
    """
    family = family_id(family)
    if outer.family != family or inner.family != family:
        raise ParamError("can not compose {} and {} within {}".format(outer, inner, family))
    if family == FamilyId.R0:
        return AutParams(family, alpha=outer.alpha + outer.beta * inner.alpha, beta=outer.beta * inner.beta)
    if family == FamilyId.R1:
        return AutParams(family, alpha=outer.alpha * inner.alpha, beta=outer.beta * inner.beta,
                         gamma=outer.gamma + outer.alpha * inner.gamma)
    values = {
        'alpha': outer.alpha * inner.alpha,
        'beta': outer.beta + outer.alpha * inner.beta,
        'gamma': outer.gamma * inner.gamma,
    }
    if family == FamilyId.R2:
        values['delta'] = outer.delta + outer.gamma * inner.delta
    return AutParams(family, **values)


def inverse_params(family, params):
    """
    Parameters of the inverse automorphism.
    """
    family = family_id(family)
    if params.family != family:
        raise ParamError("parameters {} do not belong to family {}".format(params, family))
    if family == FamilyId.R0:
        return AutParams(family, alpha=-params.alpha / params.beta, beta=QQ.one / params.beta)
    if family == FamilyId.R1:
        return AutParams(family, alpha=QQ.one / params.alpha, beta=QQ.one / params.beta,
                         gamma=-params.gamma / params.alpha)
    values = {
        'alpha': QQ.one / params.alpha,
        'beta': -params.beta / params.alpha,
        'gamma': QQ.one / params.gamma,
    }
    if family == FamilyId.R2:
        values['delta'] = -params.delta / params.gamma
    return AutParams(family, **values)


def identity_params(family):
    family = family_id(family)
    values = {name: QQ.zero for name in PARAM_NAMES[family]}
    for name in NONZERO_PARAMS[family]:
        values[name] = QQ.one
    return AutParams(family, **values)
