#!/usr/bin/env python
""" Swaps the entanglement of an (A, B) pair onto (A, C) with the interferometric entangler acting on (B, C) """

import argparse
import os
import sys

import numpy as np

# Allow relative import from shared folder as per PEP 366
if __name__ == "__main__" and __package__ is None:
    parent_dir = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    sys.path.insert(1, parent_dir)
    __package__ = "mz-teleport"

from qubits.protocol import swap
from qubits.teleport import AT_ZERO, add_amplitude_arguments, add_run_arguments, build_amplitudes, build_run
from shared.errors import EXIT_OK, NumericalError, ValidationError, exit_code_for
from shared.utils import parse_with_config, print_progress, write_output


def cmd_swap(field_kind="twinfock", photons=2, theta=AT_ZERO, wavelength=None, waist=None, gamma=None, delta=None,
             passes=1, cutoff=None, c0=None, c1=None, bloch=None, trials=1, seed=1, out=None):
    """ Runs entanglement swapping of c0|00> + c1|11> and writes one JSON line per trial
    :param c0: Amplitude of |00> of the initial (A, B) pair
    :param c1: Amplitude of |11> of the initial (A, B) pair
    :param bloch: Bloch angles giving (c0, c1), alternative to c0 and c1
    :return: 0 if the process ran successfully
    """
    results = []
    try:
        if trials < 1:
            raise ValidationError("Trial count must be >= 1, got {}".format(trials))
        c = build_amplitudes(c0, c1, bloch)
        field_spec, settings = build_run(field_kind, photons, theta, wavelength, waist, gamma, delta, passes, cutoff)
        print_progress("Entanglement swapping, theta_eff = {:.6g}", settings.theta_eff, init=True)
        for trial in range(trials):
            results.append(swap(c, field_spec, settings, seed, trial))
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
    return add_amplitude_arguments(add_run_arguments(parser))


if __name__ == '__main__':
    parser = add_arguments(argparse.ArgumentParser(description='Entanglement swapping'))
    sys.exit(cmd_swap(**parse_with_config(parser)))
