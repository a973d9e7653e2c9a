import os
import tempfile
import unittest

from zetalab.config import Config, RunConfig, load_run_config, parse_config_file
from zetalab.exceptions import ConfigError


class ConfigFileTests(unittest.TestCase):

    def setUp(self):
        self.tmpdir = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmpdir.cleanup)

    def write(self, text):
        path = os.path.join(self.tmpdir.name, 'zetalab.conf')
        with open(path, 'w', encoding='utf-8') as f:
            f.write(text)
        return path

    def test_parse(self):
        path = self.write("# precision\ndigits = 40\n\nformat = CSV\nparallelism=2\n")
        self.assertEqual(parse_config_file(path), {'digits': 40, 'format': 'csv', 'parallelism': 2})

    def test_unknown_key(self):
        with self.assertRaises(ConfigError):
            parse_config_file(self.write("precision = 40\n"))

    def test_malformed_line(self):
        with self.assertRaises(ConfigError):
            parse_config_file(self.write("digits 40\n"))

    def test_bad_value(self):
        with self.assertRaises(ConfigError):
            parse_config_file(self.write("digits = many\n"))

    def test_missing_file(self):
        with self.assertRaises(ConfigError):
            parse_config_file(os.path.join(self.tmpdir.name, 'absent.conf'))

    def test_flags_override_file(self):
        path = self.write("digits = 40\nformat = text\n")
        run = load_run_config(path, digits=30, format=None)
        self.assertEqual(run, RunConfig(digits=30, format='text', parallelism=Config.PARALLELISM))


class RunConfigTests(unittest.TestCase):

    def test_defaults(self):
        run = load_run_config()
        self.assertEqual(run.digits, Config.DIGITS)
        self.assertIn(run.format, Config.FORMATS)

    def test_validation(self):
        with self.assertRaises(ConfigError):
            load_run_config(digits=5)
        with self.assertRaises(ConfigError):
            load_run_config(format='xml')
        with self.assertRaises(ConfigError):
            load_run_config(parallelism=0)

    def test_unknown_override(self):
        with self.assertRaises(ConfigError):
            load_run_config(precision=30)


if __name__ == '__main__':
    unittest.main()
