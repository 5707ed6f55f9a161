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

import pytest

from leibnizaut.configuration import WorkbenchConfig, WorkbenchConfigError


@pytest.fixture
def make_config_file(tmp_path):

    def _make_config_file(content):
        path = tmp_path / "leibnizaut.yaml"
        path.write_text(content)
        return str(path)

    return _make_config_file


class TestWorkbenchConfig:

    @staticmethod
    def test_defaults():
        config = WorkbenchConfig()
        assert config.seed == 0
        assert config.smoke_pairs == 20
        assert config.random_triples == 5
        assert config.replay_max_n == 8
        assert config.sentry_dsn == ''

    @staticmethod
    def test_override_from_dict():
        config = WorkbenchConfig({WorkbenchConfig.SEED: 42, WorkbenchConfig.REPLAY_MAX_N: 5})
        assert config.seed == 42
        assert config.replay_max_n == 5
        # untouched values keep their defaults
        assert config.smoke_pairs == 20

    @staticmethod
    def test_invalid_values():
        with pytest.raises(WorkbenchConfigError):
            WorkbenchConfig({WorkbenchConfig.SEED: "abc"})
        with pytest.raises(WorkbenchConfigError):
            WorkbenchConfig({WorkbenchConfig.SMOKE_PAIRS: -1})
        with pytest.raises(WorkbenchConfigError):
            WorkbenchConfig({WorkbenchConfig.REPLAY_MAX_N: 0})
        with pytest.raises(WorkbenchConfigError):
            WorkbenchConfig({WorkbenchConfig.RANDOM_TRIPLES: True})

    @staticmethod
    def test_str_does_not_leak_dsn():
        config = WorkbenchConfig({WorkbenchConfig.SENTRY_DSN: "https://secret@sentry.io/1"})
        assert "secret" not in str(config)

    @staticmethod
    def test_parse_from_file(make_config_file):
        path = make_config_file("workbench_configuration:\n    seed: 7\n    random_triples: 2\n")
        config = WorkbenchConfig.parse_config_from_file(path)
        assert config.seed == 7
        assert config.random_triples == 2

    @staticmethod
    def test_parse_empty_file_gives_defaults(make_config_file):
        config = WorkbenchConfig.parse_config_from_file(make_config_file(""))
        assert config.seed == 0

    @staticmethod
    def test_parse_invalid_file(make_config_file):
        with pytest.raises(WorkbenchConfigError):
            WorkbenchConfig.parse_config_from_file(make_config_file("workbench_configuration: [1, 2\n"))
        with pytest.raises(WorkbenchConfigError):
            WorkbenchConfig.parse_config_from_file(make_config_file("- just\n- a list\n"))
