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
Replay of the necessity argument for the automorphism groups of R0 and R1.

The images of the generators are written with unknown coefficients
a_<j>_<i> (coefficient of basis vector j in the image of basis vector i,
numbered by the family's own labels). Scripted basis pairs are imposed one
by one, every coefficient of phi([u, v]) - [phi(u), phi(v)] becomes a
polynomial constraint, and the constraints are solved where they are
linear in some unknown. The record of what each pair forced is a
Certificate.
"""

from sympy import Symbol
from sympy.parsing.sympy_parser import parse_expr
from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyRing

from leibnizaut.algebra import bracket, bracket_with
from leibnizaut.exactnum import scalar
from leibnizaut.families import DimensionError, FamilyId, PARAM_NAMES, ParamError, build, check_dimension, \
    dimension, family_id, family_images
from leibnizaut.log import log


class InconsistencyError(Exception):
    pass


class ResidualError(Exception):
    pass


class MissingVariableError(Exception):
    pass


class ReplayError(Exception):
    pass


class CertificateFormatError(Exception):
    pass


GREEK = ('alpha', 'beta', 'gamma', 'delta')


def poly_eval(p, assignment):
    """
    Evaluate a polynomial at Scalars given by variable name.

    :param p: PolyElement
    :param assignment: dict variable name -> Scalar (or anything scalar() accepts)
    :return: Scalar
    """
    names = [str(s) for s in p.ring.symbols]
    values = {}
    total = QQ.zero
    for monom, coeff in p.items():
        term = coeff
        for index, exp in enumerate(monom):
            if not exp:
                continue
            if index not in values:
                try:
                    values[index] = scalar(assignment[names[index]])
                except KeyError:
                    raise MissingVariableError("no value given for variable '{}'".format(names[index]))
            term = term * values[index] ** exp
        total += term
    return total


def parse_poly(text, ring):
    """
    Parse a polynomial in the variables of ``ring``.
    """
    # beta and gamma would otherwise parse as sympy functions
    local_dict = {str(s): s for s in ring.symbols}
    try:
        return ring.from_expr(parse_expr(str(text), local_dict=local_dict))
    except Exception as e:
        raise CertificateFormatError("'{}' is not a polynomial in {}: {}".format(
            text, [str(s) for s in ring.symbols], e))


def _variables(p):
    used = set()
    for monom in p.itermonoms():
        used.update(index for index, exp in enumerate(monom) if exp)
    return used


def _mentions(p, index):
    return any(monom[index] for monom in p.itermonoms())


class Constraint(object):
    """
    One constraint derived while imposing a pair.

    A determination or relation solves ``var`` as ``value``; a residual is a
    polynomial ``value`` = 0 left for the closing propagation.
    """

    __slots__ = "kind", "var", "value", "divided_by"

    DETERMINATION = 'determination'
    RELATION = 'relation'
    RESIDUAL = 'residual'
    KINDS = (DETERMINATION, RELATION, RESIDUAL)

    def __init__(self, kind, var, value, divided_by=()):
        self.kind = kind
        self.var = var
        self.value = value
        self.divided_by = list(divided_by)

    def __str__(self):
        if self.kind == self.RESIDUAL:
            return "{} = 0".format(self.value)
        return "{} = {}".format(self.var, self.value)

    def to_dict(self):
        return {
            "kind": self.kind,
            "var": self.var,
            "value_poly": str(self.value),
            "divided_by": list(self.divided_by),
        }

    @staticmethod
    def from_dict(data, ring):
        try:
            kind, var, value = data["kind"], data["var"], data["value_poly"]
        except (KeyError, TypeError):
            raise CertificateFormatError("constraint '{}' must have 'kind', 'var' and 'value_poly'".format(data))
        if kind not in Constraint.KINDS:
            raise CertificateFormatError("unknown constraint kind '{}'".format(kind))
        return Constraint(kind, var, parse_poly(value, ring), data.get("divided_by", []))


class Step(object):

    __slots__ = "pair", "constraints"

    def __init__(self, pair, constraints):
        self.pair = tuple(pair)
        self.constraints = list(constraints)

    def to_dict(self):
        return {
            "pair": list(self.pair),
            "constraints": [c.to_dict() for c in self.constraints],
        }


class SideCondition(object):
    """
    Nonvanishing assumption on a variable, taken before step ``before_step``
    (1-based).
    """

    __slots__ = "var", "reason", "before_step"

    def __init__(self, var, reason, before_step):
        self.var = var
        self.reason = reason
        self.before_step = before_step

    def to_dict(self):
        return {"var": self.var, "reason": self.reason, "before_step": self.before_step}


class SymbolicMap(object):
    """
    Generator images with polynomial coefficients, plus what has been
    solved so far. Images of the other basis vectors follow from the
    generators through the generation rule.
    """

    def __init__(self, algebra, ring, generators, parameters, generated=()):
        """
        :param algebra: the algebra being mapped
        :param ring: PolyRing holding the unknowns
        :param generators: dict basis index -> list of ring variable indices of its image
        :param parameters: ring variable indices of the free parameters
        :param generated: triples (k, i, j) with b_k = [b_i, b_j], in increasing k
        """
        self.algebra = algebra
        self.ring = ring
        self.images = {i: [ring.gens[v] for v in variables] for i, variables in generators.items()}
        self.parameters = set(parameters)
        self.unknowns = [v for i in sorted(generators) for v in generators[i] if v not in self.parameters]
        self.solved = {}
        self.nonzero = set()
        self.pending = []
        self.generated = {k: (i, j) for k, i, j in generated}

    def name(self, index):
        return str(self.ring.symbols[index])

    def index(self, name):
        try:
            return self.ring.symbols.index(Symbol(name))
        except ValueError:
            raise ReplayError("unknown variable '{}'".format(name))

    def basis_image(self, i):
        if i in self.images:
            return self.images[i]
        if i not in self.generated:
            raise ReplayError("image of {} is neither a generator nor generated".format(
                self.algebra.basis_labels[i]))
        left, right = self.generated[i]
        return bracket_with(self.algebra, self.basis_image(left), self.basis_image(right), self.ring.zero)

    def image_of(self, vector):
        result = [self.ring.zero] * self.algebra.dim
        for i, c in enumerate(vector):
            if not c:
                continue
            result = [r + x * c for r, x in zip(result, self.basis_image(i))]
        return result

    def assume_nonzero(self, name):
        self.nonzero.add(self.index(name))

    def reduce(self, p):
        if not self.solved or not p:
            return p
        return p.compose([(self.ring.gens[v], value) for v, value in self.solved.items()])

    def assign(self, var, value):
        gen = self.ring.gens[var]
        for v, solution in self.solved.items():
            if _mentions(solution, var):
                self.solved[v] = solution.compose(gen, value)
        self.solved[var] = value
        for i, image in self.images.items():
            self.images[i] = [x.compose(gen, value) if _mentions(x, var) else x for x in image]
        self.pending = [(p.compose(gen, value) if _mentions(p, var) else p, divided)
                        for p, divided in self.pending]

    def strip(self, p):
        """
        Divide out the largest monomial made of variables known to be nonzero.
        """
        exps = [0] * self.ring.ngens
        divided = []
        monoms = list(p.itermonoms())
        for v in sorted(self.nonzero):
            e = min(monom[v] for monom in monoms)
            if e:
                exps[v] = e
                divided.append(self.name(v) if e == 1 else "{}**{}".format(self.name(v), e))
        if not divided:
            return p, divided
        shifted = {tuple(m - e for m, e in zip(monom, exps)): coeff for monom, coeff in p.items()}
        return self.ring.from_dict(shifted), divided

    def solve_for(self, p):
        """
        Pick the first unknown occurring linearly with a constant coefficient.

        :return: (variable index, value, True when the value involves parameters only) or None
        """
        relation = None
        for v in self.unknowns:
            if v in self.solved or v in self.nonzero:
                continue
            terms = [(monom, coeff) for monom, coeff in p.items() if monom[v]]
            if len(terms) != 1:
                continue
            monom, coeff = terms[0]
            if sum(monom) != 1:
                continue
            rest = p - self.ring.gens[v] * coeff
            value = rest * (-QQ.one / coeff)
            determined = _variables(value) <= self.parameters
            if determined:
                return v, value, True
            if relation is None:
                relation = (v, value, False)
        return relation

    def _settle(self, queue, closing):
        records = []
        progress = True
        while progress:
            progress = False
            remaining = []
            for p, divided in queue:
                p = self.reduce(p)
                if not p:
                    continue
                p, stripped = self.strip(p)
                divided = divided + stripped
                if p.is_ground:
                    raise InconsistencyError("constraint reduces to {} = 0".format(p))
                found = self.solve_for(p)
                if found is not None and (found[2] or closing):
                    var, value, determined = found
                    self.assign(var, value)
                    kind = Constraint.DETERMINATION if determined else Constraint.RELATION
                    records.append(Constraint(kind, self.name(var), value, divided))
                    log.debug("%s %s = %s", kind, self.name(var), value)
                    progress = True
                    continue
                remaining.append((p, divided))
            queue = remaining
        return records, queue

    def settle(self, polys):
        """
        Solve what a fresh batch of constraints determines, keep the rest.
        """
        records, remaining = self._settle([(p, []) for p in polys], closing=False)
        for p, divided in remaining:
            found = self.solve_for(p)
            if found is not None:
                var, value, _ = found
                records.append(Constraint(Constraint.RELATION, self.name(var), value, divided))
                log.debug("relation %s = %s kept for closing", self.name(var), value)
            else:
                records.append(Constraint(Constraint.RESIDUAL, None, p.monic(), divided))
                log.debug("residual %s = 0 kept for closing", p)
            self.pending.append((p, divided))
        return records

    def close(self):
        """
        Revisit the kept constraints, substituting relations as well.

        :return: (list of Constraint, list of polynomials left non-zero)
        """
        queue, self.pending = self.pending, []
        records, remaining = self._settle(queue, closing=True)
        return records, [p for p, _ in remaining]

    def unsolved(self):
        return [self.name(v) for v in self.unknowns if v not in self.solved]


def impose_pair(s, a, u, v):
    """
    Impose phi([u, v]) = [phi(u), phi(v)] on a SymbolicMap.

    :return: tuple (s, list of Constraint derived by this pair)
    """
    w = bracket(a, u, v)
    lhs = s.image_of(w)
    rhs = bracket_with(a, s.image_of(u), s.image_of(v), s.ring.zero)
    return s, s.settle([l - r for l, r in zip(lhs, rhs)])


class Certificate(object):

    __slots__ = "family", "n", "steps", "side_conditions", "closing", "final_images", "match"

    def __init__(self, family, n, steps, side_conditions, closing, final_images, match):
        self.family = family_id(family)
        self.n = n
        self.steps = list(steps)
        self.side_conditions = list(side_conditions)
        self.closing = list(closing)
        self.final_images = [list(column) for column in final_images]
        self.match = match

    def __str__(self):
        return "<Certificate(id={} family={} n={} steps={} match={})>".format(
                id(self),
                self.family,
                self.n,
                len(self.steps),
                self.match,
                )

    def to_dict(self):
        return {
            "family": self.family.value,
            "n": self.n,
            "side_conditions": [c.to_dict() for c in self.side_conditions],
            "steps": [step.to_dict() for step in self.steps],
            "closing": [c.to_dict() for c in self.closing],
            "final_images": [[str(p) for p in column] for column in self.final_images],
            "match": self.match,
        }

    @staticmethod
    def from_dict(data):
        if not isinstance(data, dict):
            raise CertificateFormatError("certificate must be a JSON object")
        try:
            family = family_id(data["family"])
            n = data["n"]
            ring = _replay_setup(family, n)[0]
            steps = []
            for step in data["steps"]:
                steps.append(Step(step["pair"], [Constraint.from_dict(c, ring) for c in step["constraints"]]))
            side_conditions = [SideCondition(c["var"], c["reason"], c["before_step"])
                               for c in data.get("side_conditions", [])]
            closing = [Constraint.from_dict(c, ring) for c in data.get("closing", [])]
            final_images = [[parse_poly(p, ring) for p in column] for column in data["final_images"]]
            match = data["match"]
        except (KeyError, TypeError) as e:
            raise CertificateFormatError("malformed certificate: {}".format(e))
        except (ReplayError, DimensionError, ParamError) as e:
            raise CertificateFormatError(str(e))
        return Certificate(family, n, steps, side_conditions, closing, final_images, match)


R0_ASSUMPTION = ("phi preserves the nilradical span(e1..en) and its square span(e2..en); "
                 "the induced map on their quotient is multiplication by a_1_1, so a_1_1 != 0 "
                 "or phi is singular")
R1_ASSUMPTION_E1 = ("phi induces an invertible map on the quotient of the nilradical by its square, "
                    "span(e1, e2); with a_1_1 = 0 the image of phi misses e1 modulo the square")
R1_ASSUMPTION_E2 = ("phi induces an invertible map on the quotient of the nilradical by its square, "
                    "span(e1, e2); with a_2_2 = 0 the image of phi misses e2 modulo the square")


def _var_name(row, column, offset):
    return "a_{}_{}".format(row + offset, column + offset)


def _replay_setup(family, n):
    """
    Ring, generator variables, parameter renaming, script and generation
    rule of a family.

    :return: (ring, generators, renaming, script, generated)
    """
    family = family_id(family)
    check_dimension(family, n)
    dim = dimension(family, n)
    if family == FamilyId.R0:
        offset = 0
        columns = [0, 1]
        renaming = [("a_1_0", "alpha"), ("a_1_1", "beta")]
        script = [
            ('pair', 'e0', 'e0'),
            ('assume', 'a_1_1', R0_ASSUMPTION),
            ('pair', 'e0', 'e1'),
        ]
        # e_k = [e_{k-1}, e_1]
        generated = [(k, k - 1, 1) for k in range(2, n + 1)]
    elif family == FamilyId.R1:
        offset = 1
        x, y = n, n + 1
        columns = [0, 1, x, y]
        renaming = [("a_1_1", "alpha"), ("a_2_2", "beta"), (_var_name(0, x, offset), "gamma")]
        script = [
            ('pair', 'e1', 'x'),
            ('pair', 'e2', 'y'),
            ('assume', 'a_1_1', R1_ASSUMPTION_E1),
            ('assume', 'a_2_2', R1_ASSUMPTION_E2),
            ('pair', 'e1', 'e1'),
            ('pair', 'y', 'e1'),
            ('pair', 'x', 'e1'),
            ('pair', 'x', 'e2'),
            ('pair', 'y', 'x'),
            ('pair', 'e2', 'y'),
            ('pair', 'y', 'y'),
            ('pair', 'e1', 'y'),
            ('pair', 'x', 'y'),
            ('pair', 'e2', 'x'),
        ]
        # e_k = [e_{k-1}, e_1], e_k stored at k - 1
        generated = [(k - 1, k - 2, 0) for k in range(3, n + 1)]
    else:
        raise ReplayError("no necessity replay for {}; its automorphisms are checked at matrix level".format(family))

    names = [_var_name(row, column, offset) for column in columns for row in range(dim)]
    ring = PolyRing(names + list(GREEK[:len(renaming)]), QQ, grlex)
    generators = {column: [names.index(_var_name(row, column, offset)) for row in range(dim)]
                  for column in columns}
    return ring, generators, renaming, script, generated


def _ring_gen(ring, name):
    return ring.gens[ring.symbols.index(Symbol(name))]


def symbolic_aut_images(family, n, ring=None):
    """
    Closed-form images with symbolic parameters.

    :param ring: PolyRing containing the parameter names, a fresh one by default
    :return: list of columns, each a list of polynomials
    """
    family = family_id(family)
    check_dimension(family, n)
    names = PARAM_NAMES[family]
    if ring is None:
        ring = PolyRing(list(names), QQ, grlex)
    values = [_ring_gen(ring, name) for name in names]
    columns = family_images(family, n, values, ring.one)
    dim = dimension(family, n)
    return [[ring.zero + column.get(row, ring.zero) for row in range(dim)] for column in columns]


def verify_sufficiency(family, n):
    """
    Check phi([b_i, b_j]) = [phi(b_i), phi(b_j)] as polynomial identities in
    the parameters, for every basis pair.

    :return: list of failing (i, j) pairs, empty when the closed form is a homomorphism
    """
    algebra = build(family, n)
    columns = symbolic_aut_images(family, n)
    ring = columns[0][0].ring
    failures = []
    for i in range(algebra.dim):
        for j in range(algebra.dim):
            lhs = [ring.zero] * algebra.dim
            for m, c in algebra.product_terms(i, j):
                lhs = [l + x * c for l, x in zip(lhs, columns[m])]
            rhs = bracket_with(algebra, columns[i], columns[j], ring.zero)
            if lhs != rhs:
                log.debug("closed form fails on (%s, %s)", algebra.basis_labels[i], algebra.basis_labels[j])
                failures.append((i, j))
    return failures


def initial_map(family, n):
    """
    SymbolicMap of R0(n) or R1(n) with every generator coefficient unknown.
    """
    ring, generators, renaming, _, generated = _replay_setup(family, n)
    parameters = [ring.index(_ring_gen(ring, old)) for old, _ in renaming]
    return SymbolicMap(build(family, n), ring, generators, parameters, generated)


def replay(family, n, max_n=8, script=None):
    """
    Replay the necessity argument for R0(n) or R1(n).

    :param script: items ('pair', left label, right label) or ('assume', variable, reason),
        the family's own proof order by default
    :return: Certificate
    """
    family = family_id(family)
    if family not in (FamilyId.R0, FamilyId.R1):
        raise ReplayError("no necessity replay for {}; its automorphisms are checked at matrix level".format(family))
    check_dimension(family, n)
    if n > max_n:
        raise ReplayError("replay of {}({}) exceeds the configured limit n <= {}".format(family, n, max_n))

    _, _, renaming, default_script, _ = _replay_setup(family, n)
    s = initial_map(family, n)
    algebra, ring = s.algebra, s.ring
    if script is None:
        script = default_script

    steps = []
    side_conditions = []
    for item in script:
        if item[0] == 'assume':
            _, var, reason = item
            s.assume_nonzero(var)
            side_conditions.append(SideCondition(var, reason, len(steps) + 1))
            log.debug("assume %s != 0", var)
            continue
        _, left, right = item
        log.debug("imposing pair (%s, %s)", left, right)
        u = algebra.basis_vector(algebra.label_index(left))
        v = algebra.basis_vector(algebra.label_index(right))
        s, constraints = impose_pair(s, algebra, u, v)
        steps.append(Step((left, right), constraints))

    closing, remaining = s.close()
    if remaining:
        raise ResidualError("constraints left after closing propagation: {}".format(
            ", ".join("{} = 0".format(p) for p in remaining)))
    unsolved = s.unsolved()
    if unsolved:
        raise ResidualError("unknowns left unsolved: {}".format(", ".join(unsolved)))

    substitution = [(_ring_gen(ring, old), _ring_gen(ring, new)) for old, new in renaming]
    final_images = [[p.compose(substitution) for p in s.basis_image(i)] for i in range(algebra.dim)]

    expected = symbolic_aut_images(family, n, ring)
    match = final_images == expected
    if not match:
        log.warning("replayed images of %s(%d) differ from the closed form", family, n)
    return Certificate(family, n, steps, side_conditions, closing, final_images, match)


def check_certificate(cert):
    """
    Replay from scratch and compare with a stored certificate.
    """
    return replay(cert.family, cert.n, max_n=cert.n).to_dict() == cert.to_dict()
