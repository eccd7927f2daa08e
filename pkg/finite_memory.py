import os
import json
import sys
import argparse
import logging
from itertools import combinations
from source.analysis import log_grid, sweep, markov_limit_study
from source.analytic import tegmark_time
from source.config import RunConfig
from source.errors import NumericalError
from source.method_id import MethodID
from source.preset_id import PresetID, format_preset_table
from source.utils import LOGGER_NAME, write_csv, write_csv_file


def configure_logger_with_name(name: str, log_file_path: str, verbose: bool):
    logger = logging.getLogger(name)
    logger.setLevel(logging.INFO)
    logger.handlers.clear()
    logger.disabled = False
    if verbose:
        handler = logging.FileHandler(log_file_path)
        formatter = logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s')
        handler.setFormatter(formatter)
        logger.addHandler(handler)
    else:
        logger.disabled = True
    logger.propagate = False
    return logger

# CSV to --out (with the resolved config beside it) or to standard output
def emit_csv(config: RunConfig, header, rows, comments):
    if config.out:
        write_csv_file(config.out, header, rows, comments)
        config.save(f'{config.out}.conf')
    else:
        write_csv(sys.stdout, header, rows, comments)

def cmd_decay(config: RunConfig):
    logger = logging.getLogger(LOGGER_NAME)
    params = config.physical_params()
    methods = config.method_ids(MethodID.decay_methods())
    spectrum = config.spectral_density()
    if spectrum is not None:
        logger.info(f'Tabulated spectrum {config.spectrum}: {len(spectrum.omegas)} samples on [{spectrum.omegas[0]}, {spectrum.omegas[-1]}]')
    all_series = []
    for method in methods:
        logger.info(f'Generating {method.value} on t_max {config.t_max}, dt {config.dt}')
        all_series.append(method.generate(params, config.t_max, config.dt, config.fock_cap, spectrum=spectrum))
    header = ['t'] + [f'{method.value}_{part}' for method in methods for part in ('re', 'im', 'abs')]
    times = all_series[0].times()
    rows = []
    for index, t in enumerate(times):
        row = [t]
        for series in all_series:
            value = series.values[index]
            row += [value.real, value.imag, abs(value)]
        rows.append(row)
    comments = [f'max_abs_divergence {first.label} vs {second.label}: {first.max_abs_difference(second):.17g}'
                for first, second in combinations(all_series, 2)]
    emit_csv(config, header, rows, comments)
    if config.out:
        print(f'Wrote {len(rows)} rows for {", ".join(method.value for method in methods)} to {config.out}')

def cmd_sweep(config: RunConfig):
    params = config.physical_params()
    methods = config.method_ids()
    grid = log_grid(config.tau_c_min, config.tau_c_max, config.points)
    result = sweep(params, grid, methods, config.threshold, config.interpolate, config.jobs, config.fock_cap)
    emit_csv(config, result.csv_header(), result.csv_rows(), result.csv_comments())
    if config.out:
        with open(f'{config.out}.json', 'w') as file:
            json.dump(result.to_dict(), file, indent=4)
        for method in result.methods:
            print(f'{method} exponent={result.fits[method].exponent:.6f}')

def cmd_limit(config: RunConfig):
    study = markov_limit_study(config.physical_params(), config.tau_c_start, config.decades, config.threshold)
    emit_csv(config, study.csv_header(), study.csv_rows(), study.csv_comments())
    if config.out:
        print(f'converged_ratio={study.converged_ratio():.6f} converged={str(study.converged()).lower()}')

def cmd_presets(config: RunConfig):
    preset_id = PresetID.from_name(config.preset)
    if preset_id == PresetID.CUSTOM and not (config.is_explicit('tau_c_min') and config.is_explicit('tau_c_max')):
        raise ValueError('Custom preset needs --tau-c-min and --tau-c-max (seconds).')
    preset = preset_id.preset(config.multiplier, config.tau_c_min, config.tau_c_max)
    logging.getLogger(LOGGER_NAME).info(f'{preset_id.display_name()} preset: {preset.to_dict()}')
    tau_T = config.tau_T or tegmark_time(config.physical_params())
    estimates = preset.estimates(tau_T)
    print(format_preset_table(preset, estimates))
    if config.out:
        comments = [f'preset={preset.name} assumption={str(preset.assumption).lower()}']
        write_csv_file(config.out, ['tau_c', 'tau_T', 'tau_dec', 'enhancement'], [estimate.to_row() for estimate in estimates], comments)
        config.save(f'{config.out}.conf')

def build_parser():
    # Flags default to SUPPRESS so that only given flags override the config file
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', dest='config_path', default=None, help='Flat key = value (or .json) configuration file.')
    common.add_argument('--out', default=argparse.SUPPRESS, help='CSV output path; standard output when omitted.')
    common.add_argument('--jobs', type=int, default=argparse.SUPPRESS, help='Worker processes for sweeps.')
    common.add_argument('-v', '--verbose', action='store_true', help='Write a log file next to the output.')
    common.add_argument('--method', dest='methods', action='append', default=argparse.SUPPRESS, help='Coherence method (repeatable).')
    common.add_argument('--spectrum', default=argparse.SUPPRESS, help='Two-column (omega, J) file giving the quadratic method its rate.')
    for flag, dest, kind in (('--a', 'a', float), ('--hbar', 'hbar', float), ('--D', 'D', float), ('--tau-c', 'tau_c', float),
                             ('--beta', 'beta', float), ('--t-max', 't_max', float), ('--dt', 'dt', float),
                             ('--tau-c-min', 'tau_c_min', float), ('--tau-c-max', 'tau_c_max', float), ('--points', 'points', int),
                             ('--tau-c-start', 'tau_c_start', float), ('--decades', 'decades', int), ('--threshold', 'threshold', float),
                             ('--fock-cap', 'fock_cap', int), ('--tau-t', 'tau_T', float), ('--multiplier', 'multiplier', float)):
        common.add_argument(flag, dest=dest, type=kind, default=argparse.SUPPRESS)
    extraction = common.add_mutually_exclusive_group()
    extraction.add_argument('--interpolate', dest='interpolate', action='store_true', default=argparse.SUPPRESS, help='Interpolate the threshold crossing (default).')
    extraction.add_argument('--grid-point', dest='interpolate', action='store_false', default=argparse.SUPPRESS, help='Report the first grid point at or below the threshold.')

    parser = argparse.ArgumentParser(prog='finite_memory.py', description='Decoherence times of a two-state superposition in a finite-memory bath.')
    subparsers = parser.add_subparsers(dest='command', required=True)
    subparsers.add_parser('decay', parents=[common], help='Coherence decay curves C(t).')
    subparsers.add_parser('sweep', parents=[common], help='Decoherence time over a tau_c grid with power-law fits.')
    subparsers.add_parser('limit', parents=[common], help='Approach to the Markovian limit.')
    presets = subparsers.add_parser('presets', parents=[common], help='Biological correlation-time presets (SI units).')
    presets.add_argument('preset', nargs='?', default=argparse.SUPPRESS, help='water, microtubule or custom.')
    return parser

def main(argv=None):
    parser = build_parser()
    args = vars(parser.parse_args(argv))
    command = args.pop('command')
    config_path = args.pop('config_path')
    verbose = args.pop('verbose')
    commands = {'decay': cmd_decay, 'sweep': cmd_sweep, 'limit': cmd_limit, 'presets': cmd_presets}
    try:
        config = RunConfig.from_sources(config_path, args)
        if config.out and os.path.dirname(config.out):
            os.makedirs(os.path.dirname(config.out), exist_ok=True)
        log_file_path = f'{config.out}.log' if config.out else f'{LOGGER_NAME}.log'
        logger = configure_logger_with_name(LOGGER_NAME, log_file_path, verbose)
        logger.info(f'Begin {command} with {config.to_dict()}.')
        commands[command](config)
        logger.info(f'Finished {command}.')
    except NumericalError as error:
        print(f'{parser.prog}: numerical failure: {error}', file=sys.stderr)
        return 3
    except (ValueError, OSError) as error:
        print(f'{parser.prog}: error: {error}', file=sys.stderr)
        return 2
    return 0

if __name__ == "__main__":
    sys.exit(main())
