#!/usr/bin/env python
""" Monte Carlo teleportation runs: writes one JSON transcript per trial and prints a branch summary """

import argparse
import cmath
import math
import os
import sys

# Allow relative import from shared folder as per PEP 366
if __name__ == "__main__" and __package__ is None:
    parent_dir = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    sys.path.insert(1, parent_dir)
    __package__ = "mz-teleport"

from analytic.formulas import PhysicalParams, first_chi0_zero, theta_single_pass
from optics.interferometer import FieldSpec, InteractionSettings
from qubits.protocol import summarize_trials, teleport_trials
from shared.errors import EXIT_OK, NumericalError, ValidationError, exit_code_for
from shared.utils import parse_with_config, print_progress, write_output

AMPLITUDE_TOL = 1e-6
AT_ZERO = "zero"


def theta_value(text: str):
    """ argparse type of --theta: radians, or 'zero' for the first chi_0 zero of the twin-Fock photon number """
    if text.strip().lower() == AT_ZERO:
        return AT_ZERO
    return float(text)


def build_run(field_kind="twinfock", photons=2, theta=AT_ZERO, wavelength=None, waist=None, gamma=None, delta=None,
              passes=1, cutoff=None):
    """ Turns the light and interaction flags into (FieldSpec, InteractionSettings).
        theta is given directly (radians or 'zero') unless all four physical parameters are given instead.
    """
    field_spec = FieldSpec(field_kind, photons, cutoff)
    physical = [wavelength, waist, gamma, delta]
    if any(v is not None for v in [wavelength, waist]):
        if any(v is None for v in physical):
            raise ValidationError("--lambda, --waist, --gamma and --delta must be given together")
        params = PhysicalParams(wavelength, waist, gamma, delta, passes)
        return field_spec, InteractionSettings(theta_single_pass(params), passes, params.gamma_over_delta)

    gamma_over_delta = None
    if gamma is not None or delta is not None:
        if gamma is None or delta is None or not delta > 0 or gamma < 0:
            raise ValidationError("--gamma and --delta must be given together with delta > 0 and gamma >= 0")
        gamma_over_delta = gamma / delta
    if theta is None:
        raise ValidationError("Either --theta or the physical parameters --lambda/--waist/--gamma/--delta are needed")
    if theta == AT_ZERO:
        if field_kind != "twinfock":
            raise ValidationError("--theta zero is only defined for a twin-Fock input")
        theta = first_chi0_zero(int(photons))[0] / passes
    return field_spec, InteractionSettings(theta, passes, gamma_over_delta)


def build_amplitudes(c0=None, c1=None, bloch=None):
    """ (c0, c1) from explicit complex amplitudes or from Bloch angles (polar, azimuth) in radians """
    if bloch is not None:
        if c0 is not None or c1 is not None:
            raise ValidationError("Give either --c0/--c1 or --bloch, not both")
        polar, azimuth = bloch
        return math.cos(polar / 2), cmath.exp(1j * azimuth) * math.sin(polar / 2)
    c0 = 1 if c0 is None else c0
    c1 = 0 if c1 is None else c1
    norm = math.sqrt(abs(c0) ** 2 + abs(c1) ** 2)
    if abs(norm - 1) > AMPLITUDE_TOL:
        raise ValidationError("|c0|^2 + |c1|^2 must be 1, got {!r}".format(norm ** 2))
    return c0 / norm, c1 / norm


def cmd_teleport(field_kind="twinfock", photons=2, theta=AT_ZERO, wavelength=None, waist=None, gamma=None,
                 delta=None, passes=1, cutoff=None, c0=None, c1=None, bloch=None, trials=1, seed=1, n_procs=1, out=None,
                 summary=None):
    """ Runs teleportation trials and writes their transcripts as JSON lines
    :param field_kind: "coherent" or "twinfock"
    :param photons: Mean (coherent) or per-mode (twin-Fock) photon number
    :param theta: Single-pass phase in radians, or "zero" for the first chi_0 zero
    :param wavelength: Optical wavelength, alternative to theta together with waist, gamma and delta
    :param waist: Beam waist, same unit as the wavelength
    :param gamma: Atomic linewidth
    :param delta: Detuning, same unit as the linewidth
    :param passes: Cavity pass count M
    :param cutoff: Photon-number cutoff of a coherent input, chosen from the mean if not provided
    :param c0: Amplitude of |0> of the teleported qubit
    :param c1: Amplitude of |1> of the teleported qubit
    :param bloch: (polar, azimuth) of the teleported qubit, alternative to c0 and c1
    :param trials: Number of trials
    :param seed: Master seed
    :param n_procs: Number of worker threads
    :param out: Transcript path, stdout if not provided
    :param summary: Path of the key=value summary, printed on stderr in any case
    :return: 0 if the process ran successfully
    """
    try:
        c = build_amplitudes(c0, c1, bloch)
        field_spec, settings = build_run(field_kind, photons, theta, wavelength, waist, gamma, delta, passes, cutoff)
        print_progress("Preparing {} input, theta_eff = {:.6g}", field_kind, settings.theta_eff, init=True)
        transcripts = teleport_trials(c, field_spec, settings, seed, trials, n_procs,
                                      progress=lambda done: print_progress("Trial {}/{}", done, trials))
    except (ValidationError, NumericalError) as e:
        print("Error - " + str(e), file=sys.stderr)
        return exit_code_for(e)

    print_progress("Finished {} trials", trials, final=True)
    report = summarize_trials(transcripts)
    lines = ["seed={}".format(seed)] + report.to_lines()
    for line in lines:
        print(line, file=sys.stderr)
    write_output("".join(t.to_json() + "\n" for t in transcripts), out)
    if summary:
        write_output("\n".join(lines) + "\n", summary)
    return EXIT_OK


def add_run_arguments(parser):
    """ Light, interaction and randomness flags shared by the protocol commands """
    parser.add_argument('--input', dest='field_kind', type=str, choices=["coherent", "twinfock"],
                        default="twinfock", help='Light sent into the interferometer')
    parser.add_argument('--photons', type=float, default=2,
                        help='Mean photon number (coherent) or photons per mode (twin-Fock)')
    parser.add_argument('--theta', type=theta_value, default=AT_ZERO,
                        help='Single-pass phase in radians, or "zero" for the first chi_0 zero (twin-Fock)')
    parser.add_argument('--lambda', dest='wavelength', type=float, default=None, help='Optical wavelength')
    parser.add_argument('--waist', type=float, default=None, help='Beam waist, same unit as the wavelength')
    parser.add_argument('--gamma', type=float, default=None, help='Atomic linewidth')
    parser.add_argument('--delta', type=float, default=None, help='Detuning, same unit as the linewidth')
    parser.add_argument('--passes', type=int, default=1, help='Cavity pass count M')
    parser.add_argument('--cutoff', type=int, default=None, help='Photon-number cutoff of a coherent input')
    parser.add_argument('--trials', type=int, default=1, help='Number of trials')
    parser.add_argument('--seed', type=int, default=1, help='Master seed')
    parser.add_argument('--out', type=str, default=None, help='Output path of the JSON lines')
    return parser


def add_amplitude_arguments(parser):
    parser.add_argument('--c0', type=complex, default=None, help='Amplitude of |0>, e.g. 0.6 or 0.6+0.2j')
    parser.add_argument('--c1', type=complex, default=None, help='Amplitude of |1>')
    parser.add_argument('--bloch', type=float, nargs=2, default=None, metavar=('POLAR', 'AZIMUTH'),
                        help='Bloch angles of the qubit in radians, alternative to --c0/--c1')
    return parser


def add_arguments(parser):
    add_amplitude_arguments(add_run_arguments(parser))
    parser.add_argument('--n-procs', type=int, default=1, help='Number of worker threads')
    parser.add_argument('--summary', type=str, default=None, help='Output path of the key=value summary')
    return parser


if __name__ == '__main__':
    parser = add_arguments(argparse.ArgumentParser(description='Teleports a qubit between two atoms'))
    sys.exit(cmd_teleport(**parse_with_config(parser)))
