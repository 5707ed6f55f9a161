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

import sys
import argparse
import json
import logging
import random

from leibnizaut.algebra import Algebra, AlgebraFormatError, NotClosedError, Subspace, check_leibniz, \
    derived_series, is_filiform, is_ideal, is_nilpotent, is_null_filiform, is_solvable, lower_central_series, \
    square, subalgebra_restrict
from leibnizaut.configuration import WorkbenchConfig, WorkbenchConfigError
from leibnizaut.exactnum import ScalarParseError, ShapeError, SingularError, format_scalar, multiply
from leibnizaut.families import DimensionError, FamilyId, NotInFamilyError, ParamError, aut_matrix, build, \
    compose_params, param_count, parse_params, recover_params
from leibnizaut.log import log, setup_sentry
from leibnizaut.morphisms import LinearMap, MapFormatError, NotDerivationError, NotNilpotentError, \
    derivation_space, inner_derivations, is_automorphism, is_homomorphism
from leibnizaut.necessity import CertificateFormatError, InconsistencyError, ReplayError, ResidualError, replay


EXIT_OK = 0
EXIT_PROPERTY_FAILED = 1
EXIT_INPUT_ERROR = 2


class CliInputError(Exception):
    pass


INPUT_ERRORS = (CliInputError, IOError, OSError, ValueError, AlgebraFormatError, MapFormatError, ScalarParseError,
                ShapeError, DimensionError, ParamError, WorkbenchConfigError, ReplayError, CertificateFormatError)
PROPERTY_ERRORS = (InconsistencyError, ResidualError, NotInFamilyError, NotDerivationError, NotNilpotentError,
                   SingularError)


def _load_json(path):
    if path is None or path == '-':
        return json.load(sys.stdin)
    with open(path) as json_file:
        return json.load(json_file)


def _family_and_n(options):
    if options.family is None or options.n is None:
        raise CliInputError("both --family and --n are required")
    return FamilyId(options.family), options.n


def _load_algebra(options, allow_stdin=False):
    """
    Algebra from --algebra, from --family/--n, or from stdin when allowed.

    :return: tuple (Algebra, FamilyId or None)
    """
    if options.algebra is not None:
        return Algebra.from_dict(_load_json(options.algebra)), None
    if options.family is not None:
        family, n = _family_and_n(options)
        return build(family, n), family
    if allow_stdin:
        return Algebra.from_dict(_load_json('-')), None
    raise CliInputError("give an algebra with --algebra PATH or --family and --n")


def _seed(options):
    return options.seed if options.seed is not None else options.workbench_config.seed


def _emit(options, data, lines):
    if options.json:
        print(json.dumps(data, indent=2))
    else:
        print("\n".join(lines))


class LeibnizAutCtl(object):

    def __init__(self, options):
        self.cli_options = self.get_argparser().parse_args(options)
        log.debug("Parsed CLI options: %s", self.cli_options)

    @staticmethod
    def get_argparser():
        parser = argparse.ArgumentParser(prog="leibnizautctl")
        parser.add_argument("-v", "--verbose", action="store_true", default=False, help="Use more verbose output.")
        parser.add_argument("-c", "--config", default=None,
                            help="Configuration file. If not specified, the preferred configuration is used.")

        common = argparse.ArgumentParser(add_help=False)
        common.add_argument("--json", action="store_true", default=False, help="Print machine readable JSON.")
        common.add_argument("--seed", type=int, default=None, help="Seed of the advisory random smoke tests.")

        family = argparse.ArgumentParser(add_help=False)
        family.add_argument("--family", choices=[f.value for f in FamilyId], default=None, help="Algebra family.")
        family.add_argument("--n", type=int, default=None, help="Family dimension parameter.")

        source = argparse.ArgumentParser(add_help=False)
        source.add_argument("--algebra", default=None, metavar="PATH",
                            help="Algebra JSON file, '-' for standard input.")

        subparsers = parser.add_subparsers(dest='command', help="commands help")
        subparsers.required = True

        parser_cl = subparsers.add_parser("check-leibniz", parents=[common, family, source],
                                          help="Check the Leibniz identity on all basis triples")
        parser_cl.set_defaults(func=LeibnizAutCtl.command_check_leibniz)

        parser_se = subparsers.add_parser("series", parents=[common, family, source],
                                          help="Lower central and derived series dimensions")
        parser_se.set_defaults(func=LeibnizAutCtl.command_series)

        parser_cf = subparsers.add_parser("classify", parents=[common, family, source],
                                          help="Solvability and the class of the nilradical")
        parser_cf.add_argument("--nilradical", default=None, metavar="LABELS",
                               help="Comma separated basis labels spanning the nilradical. "
                                    "The square [R, R] is used if not specified.")
        parser_cf.set_defaults(func=LeibnizAutCtl.command_classify)

        parser_bu = subparsers.add_parser("build", parents=[common, family], help="Build a family member")
        parser_bu.set_defaults(func=LeibnizAutCtl.command_build)

        parser_au = subparsers.add_parser("aut", parents=[common, family],
                                          help="Closed-form automorphism with given parameters")
        parser_au.add_argument("--params", required=True, help="Parameters as alpha=p/q,beta=p/q,...")
        parser_au.set_defaults(func=LeibnizAutCtl.command_aut)

        parser_vm = subparsers.add_parser("verify-map", parents=[common, family, source],
                                          help="Check whether a linear map is an automorphism")
        parser_vm.add_argument("--map", required=True, metavar="PATH", help="Linear map JSON file.")
        parser_vm.set_defaults(func=LeibnizAutCtl.command_verify_map)

        parser_de = subparsers.add_parser("derivations", parents=[common, family, source],
                                          help="Basis of the derivation algebra")
        parser_de.set_defaults(func=LeibnizAutCtl.command_derivations)

        parser_co = subparsers.add_parser("compose", parents=[common, family],
                                          help="Compose two automorphisms of a family")
        parser_co.add_argument("--params", action="append", required=True,
                               help="Parameters of the outer map first, then of the inner map.")
        parser_co.set_defaults(func=LeibnizAutCtl.command_compose)

        parser_re = subparsers.add_parser("replay", parents=[common, family],
                                          help="Replay the necessity argument and print its certificate")
        parser_re.set_defaults(func=LeibnizAutCtl.command_replay)

        parser_cc = subparsers.add_parser("check-conf", help="Check validity of given configuration")
        parser_cc.add_argument(
            "config_file",
            metavar='CONFIG',
            help="Configuration file to check. If not specified, the preferred configuration is checked.",
            default=None,
            nargs='?'
        )
        parser_cc.set_defaults(func=LeibnizAutCtl.command_check_conf)

        return parser

    @staticmethod
    def command_check_leibniz(options):
        a, _ = _load_algebra(options)
        config = options.workbench_config
        violations = check_leibniz(a, random.Random(_seed(options)), config.random_triples)
        data = {
            "leibniz": not violations,
            "violations": [
                {
                    "triple": [i, j, k],
                    "labels": [a.basis_labels[i], a.basis_labels[j], a.basis_labels[k]],
                    "discrepancy": [format_scalar(c) for c in defect],
                }
                for i, j, k, defect in violations
            ],
        }
        lines = ["Leibniz identity holds on all basis triples" if not violations
                 else "Leibniz identity fails on {} basis triples:".format(len(violations))]
        for i, j, k, defect in violations:
            lines.append("  ({}, {}, {}): discrepancy {}".format(a.basis_labels[i], a.basis_labels[j],
                                                                a.basis_labels[k], a.format_vector(defect)))
        _emit(options, data, lines)
        return EXIT_OK if not violations else EXIT_PROPERTY_FAILED

    @staticmethod
    def command_series(options):
        a, _ = _load_algebra(options)
        lcs = [term.rank for term in lower_central_series(a)]
        ds = [term.rank for term in derived_series(a)]
        data = {
            "lower_central_series": lcs,
            "derived_series": ds,
            "nilpotent": lcs[-1] == 0,
            "nilpotency_index": len(lcs) if lcs[-1] == 0 else None,
            "solvable": ds[-1] == 0,
            "solvability_index": len(ds) if ds[-1] == 0 else None,
        }
        lines = [
            "lower central series: {}".format(", ".join(str(d) for d in lcs)),
            "derived series: {}".format(", ".join(str(d) for d in ds)),
        ]
        _emit(options, data, lines)
        return EXIT_OK

    @staticmethod
    def command_classify(options):
        a, _ = _load_algebra(options, allow_stdin=True)
        leibniz = not check_leibniz(a)
        data = {
            "dim": a.dim,
            "leibniz": leibniz,
            "solvable": is_solvable(a),
        }
        if not leibniz:
            _emit(options, data, ["not a Leibniz algebra"])
            return EXIT_PROPERTY_FAILED

        if options.nilradical is not None:
            labels = [label.strip() for label in options.nilradical.split(',') if label.strip()]
            candidate = Subspace.coordinate([a.label_index(label) for label in labels], a.dim)
            source = "given"
        else:
            candidate = square(a)
            source = "square"

        nilradical = {"source": source, "dim": candidate.rank, "ideal": is_ideal(a, candidate)}
        try:
            restricted = subalgebra_restrict(a, candidate)
        except NotClosedError as e:
            log.error("Nilradical candidate is not a subalgebra: %s", e)
            nilradical["class"] = "not a subalgebra"
            data["nilradical"] = nilradical
            _emit(options, data, ["nilradical candidate is not a subalgebra"])
            return EXIT_PROPERTY_FAILED

        if is_null_filiform(restricted):
            nilradical_class = "null-filiform"
        elif is_filiform(restricted):
            nilradical_class = "filiform"
        elif is_nilpotent(restricted):
            nilradical_class = "nilpotent"
        else:
            nilradical_class = "not nilpotent"
        nilradical["basis"] = list(restricted.basis_labels)
        nilradical["class"] = nilradical_class
        data["nilradical"] = nilradical

        lines = [
            "dimension {}, {}solvable Leibniz algebra".format(a.dim, "" if data["solvable"] else "not "),
            "nilradical ({}) {}: dimension {}, {}".format(source, ", ".join(restricted.basis_labels),
                                                          candidate.rank, nilradical_class),
        ]
        _emit(options, data, lines)
        return EXIT_OK if nilradical_class != "not nilpotent" else EXIT_PROPERTY_FAILED

    @staticmethod
    def command_build(options):
        family, n = _family_and_n(options)
        a = build(family, n)
        lines = ["[{}, {}] = {}".format(a.basis_labels[i], a.basis_labels[j], a.format_vector(a.table[(i, j)]))
                 for i, j in sorted(a.table)]
        _emit(options, a.to_dict(), lines)
        return EXIT_OK

    @staticmethod
    def command_aut(options):
        family, n = _family_and_n(options)
        params = parse_params(family, options.params)
        a = build(family, n)
        m = LinearMap(aut_matrix(family, n, params))
        lines = ["phi({}) = {}".format(label, a.format_vector(m.image(i)))
                 for i, label in enumerate(a.basis_labels)]
        _emit(options, m.to_dict(), lines)
        return EXIT_OK

    @staticmethod
    def command_verify_map(options):
        a, family = _load_algebra(options)
        m = LinearMap.from_dict(_load_json(options.map))
        config = options.workbench_config
        homomorphism, counterexample = is_homomorphism(a, m, random.Random(_seed(options)), config.smoke_pairs)
        automorphism = homomorphism and is_automorphism(a, m)
        data = {
            "homomorphism": homomorphism,
            "automorphism": automorphism,
            "counterexample": list(counterexample) if counterexample else None,
        }
        if counterexample:
            i, j = counterexample
            lines = ["not a homomorphism, fails on ({}, {})".format(a.basis_labels[i], a.basis_labels[j])]
        else:
            lines = ["automorphism" if automorphism else "homomorphism, but not invertible"]

        if family is not None:
            try:
                params = recover_params(family, options.n, m.matrix)
            except NotInFamilyError as e:
                data["family_params"] = None
                lines.append("not of the closed form: {}".format(e))
            else:
                data["family_params"] = params.to_dict()
                lines.append("closed form with {}".format(params))

        _emit(options, data, lines)
        return EXIT_OK if automorphism else EXIT_PROPERTY_FAILED

    @staticmethod
    def command_derivations(options):
        a, family = _load_algebra(options)
        basis = derivation_space(a)
        contained = all(basis.contains(d) for d in inner_derivations(a))
        data = {
            "dimension": basis.dimension,
            "basis": [LinearMap(d).to_dict() for d in basis.elements],
            "inner_derivations_contained": contained,
        }
        lines = ["dim Der = {}".format(basis.dimension)]
        ok = contained
        if family is not None:
            expected = param_count(family)
            data["expected_dimension"] = expected
            ok = ok and expected == basis.dimension
            lines.append("expected {} from the automorphism group of {}".format(expected, family))
        if not contained:
            lines.append("some right multiplication is missing from the derivation space")
        _emit(options, data, lines)
        return EXIT_OK if ok else EXIT_PROPERTY_FAILED

    @staticmethod
    def command_compose(options):
        family, n = _family_and_n(options)
        if len(options.params) != 2:
            raise CliInputError("compose needs --params twice, outer map first")
        outer, inner = [parse_params(family, text) for text in options.params]
        composed = compose_params(family, outer, inner)
        product = multiply(aut_matrix(family, n, outer), aut_matrix(family, n, inner))
        agrees = product == aut_matrix(family, n, composed)
        data = {"params": composed.to_dict(), "matches_matrix_product": agrees}
        lines = [str(composed), "matches the matrix product" if agrees else "DIFFERS from the matrix product"]
        _emit(options, data, lines)
        return EXIT_OK if agrees else EXIT_PROPERTY_FAILED

    @staticmethod
    def command_replay(options):
        family, n = _family_and_n(options)
        cert = replay(family, n, options.workbench_config.replay_max_n)
        lines = []
        for condition in cert.side_conditions:
            lines.append("assume {} != 0 before step {}: {}".format(condition.var, condition.before_step,
                                                                     condition.reason))
        for number, step in enumerate(cert.steps, 1):
            lines.append("step {} ({}, {}):".format(number, *step.pair))
            lines.extend("  {}".format(c) for c in step.constraints)
        lines.append("closing:")
        lines.extend("  {}".format(c) for c in cert.closing)
        lines.append("matches the closed form" if cert.match else "DOES NOT match the closed form")
        _emit(options, cert.to_dict(), lines)
        return EXIT_OK if cert.match else EXIT_PROPERTY_FAILED

    @staticmethod
    def command_check_conf(options):
        config_file = options.config_file
        if not config_file:
            log.info("No configuration file passed, checking validity of the most preferred configuration file.")
            config_file = WorkbenchConfig.find_workbench_configuration()
        if not config_file:
            log.error("No configuration file found in preferred locations.")
            return EXIT_INPUT_ERROR
        print("Checking validity of '{}'".format(config_file))
        try:
            config = WorkbenchConfig.parse_config_from_file(config_file)
        except WorkbenchConfigError as err:
            print("Configuration is not valid. Found following error:\n{}".format(err))
            return EXIT_INPUT_ERROR
        print("Configuration is valid!")
        print(config)
        return EXIT_OK

    def run_command(self):
        options = self.cli_options
        try:
            if options.command != "check-conf":
                options.workbench_config = WorkbenchConfig.parse_config_from_file(options.config)
                setup_sentry(options.workbench_config.sentry_dsn)
            return options.func(options)
        except PROPERTY_ERRORS as e:
            log.error("%s", e)
            return EXIT_PROPERTY_FAILED
        except INPUT_ERRORS as e:
            log.error("Invalid input: %s", e)
            return EXIT_INPUT_ERROR


def main(options=None):
    """
    Main function.

    :param options: command line options
    :return: None
    """
    try:
        # Do this as the first thing, so that we don't miss any debug log
        if LeibnizAutCtl.get_argparser().parse_args(options).verbose:
            log.setLevel(logging.DEBUG)
        app = LeibnizAutCtl(options)
        ret = app.run_command()
    except KeyboardInterrupt:
        log.info("Interrupted by the user.")
        sys.exit(0)
    else:
        sys.exit(ret)


def run_main():
    main(sys.argv[1:])
