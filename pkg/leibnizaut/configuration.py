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

import os

import yaml

from leibnizaut.log import log


class WorkbenchConfigError(Exception):
    pass


class WorkbenchConfig(object):

    __slots__ = "seed", "smoke_pairs", "random_triples", "replay_max_n", "sentry_dsn"

    SEED = 'seed'
    SMOKE_PAIRS = 'smoke_pairs'
    RANDOM_TRIPLES = 'random_triples'
    REPLAY_MAX_N = 'replay_max_n'
    SENTRY_DSN = 'sentry_dsn'

    DEFAULT_WORKBENCH_CONFIG = {
        'seed': 0,
        'smoke_pairs': 20,
        'random_triples': 5,
        'replay_max_n': 8,
        'sentry_dsn': '',
    }

    def __init__(self, config_dict=None):
        # First use default values
        self.initialize_from_dict(self.DEFAULT_WORKBENCH_CONFIG)

        if config_dict is not None:
            # Now override them with explicit values
            self.initialize_from_dict(config_dict)

    def __str__(self):
        # sentry_dsn is left out on purpose, it is a secret
        return "<WorkbenchConfig(id={} seed={} smoke_pairs={} random_triples={} replay_max_n={})>".format(
                id(self),
                self.seed,
                self.smoke_pairs,
                self.random_triples,
                self.replay_max_n,
                )

    def initialize_from_dict(self, config_dict):
        """
        Initialize the instance attributes from a given dictionary.

        :param config_dict:
        :return:
        """
        if not isinstance(config_dict, dict):
            raise WorkbenchConfigError("workbench configuration must be a mapping, got '{}'".format(config_dict))

        for key in [self.SEED, self.SMOKE_PAIRS, self.RANDOM_TRIPLES, self.REPLAY_MAX_N, self.SENTRY_DSN]:
            try:
                value = config_dict[key]
            except KeyError:
                continue

            if key == self.SENTRY_DSN:
                if value is None:
                    value = ''
                if not isinstance(value, str):
                    raise WorkbenchConfigError("'{}' must be a string".format(key))
            else:
                # bool is an int subclass, but 'seed: yes' is certainly a mistake
                if isinstance(value, bool) or not isinstance(value, int):
                    raise WorkbenchConfigError("'{}' must be an integer, got '{}'".format(key, value))
                if key != self.SEED and value < 0:
                    raise WorkbenchConfigError("'{}' must not be negative, got {}".format(key, value))
                if key == self.REPLAY_MAX_N and value < 1:
                    raise WorkbenchConfigError("'{}' must be at least 1, got {}".format(key, value))

            self.__setattr__(key, value)

    @staticmethod
    def find_workbench_configuration():
        config_file_name = 'leibnizaut.yaml'
        paths = [
            # configuration in CWD
            os.path.join(os.getcwd(), config_file_name),
            # configuration in user's home
            os.path.expanduser(os.path.join('~', config_file_name)),
            # system-wide configuration
            os.path.join('/etc', config_file_name)
        ]

        for path in paths:
            if os.path.isfile(path):
                log.debug("Most preferred config file is '%s'", path)
                return path
        return None

    @staticmethod
    def parse_config_from_file(path=None):
        """
        Parse the workbench configuration from a passed YAML config file.

        :param path: Path to the configuration YAML file
        :return: WorkbenchConfig object.
        """
        # If no specific configuration was specified, just try to look for some
        if path is None:
            path = WorkbenchConfig.find_workbench_configuration()

        # didn't find any configuration file in default locations
        if path is None:
            log.debug("Didn't find any configuration file. Using default values.")
            return WorkbenchConfig()

        log.debug("Using workbench configuration file '%s'", path)
        try:
            with open(path) as config_file:
                configuration = yaml.safe_load(config_file)
        except (IOError, OSError) as e:
            raise WorkbenchConfigError("can not read configuration file '{}': {}".format(path, e))
        except yaml.YAMLError as e:
            raise WorkbenchConfigError("configuration file '{}' is not valid YAML: {}".format(path, e))
        log.debug("Configuration loaded from YAML file: %s", str(configuration))

        # an empty file means defaults
        if configuration is None:
            return WorkbenchConfig()

        if not isinstance(configuration, dict):
            raise WorkbenchConfigError("configuration file '{}' must contain a mapping".format(path))

        config = WorkbenchConfig(configuration.get("workbench_configuration", {}) or {})
        log.debug("Parsed Workbench Config: %s", str(config))
        return config
