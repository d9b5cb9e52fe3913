""" Shared functions for the other modules """

import math
import os
import sys
import time
from datetime import datetime


def print_progress(msg, *args, show_time=True, init=False, final=False, stream=None):
    """ Throttles printing and updates the progress of a process on a single line
    Note: When running in an IDE, the terminal must be emulated in the output console to allow flushing of the output
    :param msg: String message to format with the arguments
    :param args: Positional arguments to insert into the message string
    :param show_time: If true, elapsed time will be shown before the message
    :param init: If true, resets elapsed time
    :param final: If true, throttling is ignored and the message is ended with a new line character
    :param stream: Where to print, stderr by default so that stdout can carry CSV or transcript data
    """
    stream = sys.stderr if stream is None else stream
    if print_progress.quiet:
        return
    if final or time.time() > print_progress.prev_call + 1 or print_progress.prev_call_final or init:
        end = "\n" if final else "\r"
        msg = time_brackets(init=init) + msg if show_time else msg
        msg = msg.format(*args)
        print_progress.pad_len = max(print_progress.pad_len, len(msg))
        print(msg.ljust(print_progress.pad_len), end=end, file=stream, flush=True)
        print_progress.prev_call = time.time()
        print_progress.prev_call_final = final
        if final:
            print_progress.pad_len = 0
print_progress.prev_call_final = False
print_progress.prev_call = 0
print_progress.pad_len = 0
print_progress.quiet = False


def time_elapsed(init=False, text=True):
    """ Returns the time elapsed since initialization, either in timedelta or in readable text format (default) """

    if init or not hasattr(time_elapsed, 'start'):
        time_elapsed.start = datetime.now()
        elapsed = time_elapsed.start - time_elapsed.start
    else:
        elapsed = datetime.now() - time_elapsed.start

    if text:
        return str(elapsed).split('.')[0]
    else:
        return elapsed


def time_brackets(init=False):
    """ Wraps time_elapsed in brackets [] """
    return "[{}] ".format(time_elapsed(init=init))


def load_config(path: str) -> dict:
    """ Reads a flat key=value configuration file.
    Blank lines and lines starting with '#' are skipped and trailing '# ...' comments are removed. Keys are
    lower-cased with dashes turned into underscores, so both flag names and argparse destinations can be used.
    :param path: Path to the configuration file
    :return: Dictionary of raw string values
    """
    if not os.path.isfile(path):
        raise FileNotFoundError("Not a valid configuration file: " + path)

    config = dict()
    with open(path, "r", encoding="utf-8") as f:
        for line_number, line in enumerate(f, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError("{}:{} expected key=value, got '{}'".format(path, line_number, line))
            key, value = line.split("=", 1)
            config[key.strip().lstrip("-").replace("-", "_").lower()] = value.strip()
    return config


def format_number(value, digits=12) -> str:
    """ Formats a real number with a fixed count of significant digits, as used in every CSV and report """
    if value is None:
        return "none"
    value = float(value)
    if math.isnan(value) or math.isinf(value):
        return str(value)
    return "{:.{}g}".format(value, digits)


def write_output(text: str, out_path=None):
    """ Writes the finished output of a command either to a file or to stdout. Called only once a command has
        fully succeeded, so that a failing command never leaves a partial file behind.
    """
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
        sys.stdout.flush()


def parse_with_config(parser, argv=None) -> dict:
    """ Parses the command line with an optional --config file supplying defaults, so that flags override the file.
    String values from the file go through each argument's own type conversion; store_true flags accept
    true/false, yes/no or 1/0.
    :param parser: ArgumentParser; a --config argument is added if missing
    :param argv: Arguments to parse, sys.argv[1:] if not provided
    :return: Dictionary of parsed arguments, without the config entry
    """
    if "config" not in {a.dest for a in parser._actions}:
        parser.add_argument('--config', type=str, default=None, help='Flat key=value file with default arguments')
    known, _ = parser.parse_known_args(argv)
    if known.config:
        try:
            config = load_config(known.config)
        except (OSError, ValueError) as e:
            parser.error(str(e))
        parser.set_defaults(**_config_defaults(parser, config))
    args = vars(parser.parse_args(argv))
    args.pop("config", None)
    return args


def _config_defaults(parser, config) -> dict:
    actions = {a.dest: a for a in parser._actions}
    for a in parser._actions:
        for option in a.option_strings:
            actions.setdefault(option.lstrip("-").replace("-", "_").lower(), a)
    defaults = dict()
    for key, value in config.items():
        if key not in actions or actions[key].dest in ("help", "config"):
            parser.error("unknown configuration key '{}'".format(key))
        action = actions[key]
        key = action.dest
        if action.nargs == 0:
            if value.lower() not in ("true", "false", "yes", "no", "1", "0"):
                parser.error("configuration key '{}' expects true or false, got '{}'".format(key, value))
            defaults[key] = value.lower() in ("true", "yes", "1")
        elif action.nargs in ("+", "*") or isinstance(action.nargs, int):
            convert = action.type or str
            try:
                defaults[key] = [convert(v) for v in value.replace(",", " ").split()]
            except ValueError:
                parser.error("configuration key '{}' has an invalid value '{}'".format(key, value))
        else:
            defaults[key] = value
    return defaults
