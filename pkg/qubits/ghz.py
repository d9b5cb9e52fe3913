#!/usr/bin/env python
""" Prepares the three-qubit GHZ state with two rounds of the interferometric entangler """

import argparse
import os
import sys

import numpy as np

# Allow relative import from shared folder as per PEP 366
if __name__ == "__main__" and __package__ is None:
    parent_dir = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    sys.path.insert(1, parent_dir)
    __package__ = "mz-teleport"

from qubits.protocol import ghz
from qubits.teleport import AT_ZERO, add_run_arguments, build_run
from shared.errors import EXIT_OK, NumericalError, ValidationError, exit_code_for
from shared.utils import parse_with_config, print_progress, write_output


def cmd_ghz(field_kind="twinfock", photons=2, theta=AT_ZERO, wavelength=None, waist=None, gamma=None, delta=None,
            passes=1, cutoff=None, trials=1, seed=1, out=None):
    """ Runs GHZ preparations and writes one JSON line per trial
    :param trials: Number of independent preparations, trial i uses the generator of (seed, i)
    :return: 0 if the process ran successfully
    """
    results = []
    try:
        if trials < 1:
            raise ValidationError("Trial count must be >= 1, got {}".format(trials))
        field_spec, settings = build_run(field_kind, photons, theta, wavelength, waist, gamma, delta, passes, cutoff)
        print_progress("GHZ preparation, theta_eff = {:.6g}", settings.theta_eff, init=True)
        for trial in range(trials):
            results.append(ghz(field_spec, settings, seed, trial))
            print_progress("Trial {}/{}", trial + 1, trials)
    except (ValidationError, NumericalError) as e:
        print("Error - " + str(e), file=sys.stderr)
        return exit_code_for(e)

    print_progress("Finished {} trials", trials, final=True)
    fidelities = np.array([r.fidelity for r in results])
    print("seed={}".format(seed), file=sys.stderr)
    print("mean_fidelity={!r}".format(float(fidelities.mean())), file=sys.stderr)
    print("min_fidelity={!r}".format(float(fidelities.min())), file=sys.stderr)
    write_output("".join(r.to_json() + "\n" for r in results), out)
    return EXIT_OK


def add_arguments(parser):
    return add_run_arguments(parser)


if __name__ == '__main__':
    parser = add_arguments(argparse.ArgumentParser(description='Prepares a three-atom GHZ state'))
    sys.exit(cmd_ghz(**parse_with_config(parser)))
