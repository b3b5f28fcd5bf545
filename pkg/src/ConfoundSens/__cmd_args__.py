import argparse
import os
import sys
import typing
from pathlib import Path

from ConfoundSens.config.platform_defaults import get_out_dir

COMMANDS = ('simulate', 'scree', 'bounds', 'sample', 'prop1')


def _add_data_args(p: argparse.ArgumentParser, outcome: bool = True):
    p.add_argument('--input', help='CSV file with the treatment columns (and the outcome)', required=True)
    p.add_argument('--outcome-col', help='Name of the outcome column', required=outcome, default=None)
    p.add_argument('--standardize', help='Scale the treatments to unit variance', action='store_true')


def _add_common_args(p: argparse.ArgumentParser):
    p.add_argument('--out-dir', help='Folder for the result files', default=None)
    p.add_argument('--seed', help='Seed of the random number streams', type=int, default=None)


def create_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='confoundsens', description='Sensitivity analysis for multiple treatments')
    parser.add_argument(
        '-c',
        '--config',
        help='Path to configuration folder (where the config.yml is located)',
        default=None
    )
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('simulate', help='Simulate a confounded dataset with known ground truth')
    p.add_argument('--n', type=int, default=1000, help='Number of units')
    p.add_argument('--k', type=int, default=10, help='Number of treatments')
    p.add_argument('--m', type=int, default=2, help='Number of confounders')
    p.add_argument('--r2', type=float, default=0.5, help='Fraction of the outcome variance explained by confounding')
    p.add_argument('--dgp', default='PAPER_S4', help='Loading pattern')
    p.add_argument('--variant', default='NULL_EFFECTS', help='NULL_EFFECTS, NO_CONFOUNDING or OPPOSITE_BIAS')
    _add_common_args(p)

    p = sub.add_parser('scree', help='Eigenvalues of the treatment covariance')
    _add_data_args(p, outcome=False)
    _add_common_args(p)

    p = sub.add_parser('bounds', help='Bias bounds over a grid of confounding strengths')
    _add_data_args(p)
    p.add_argument('--m', type=int, required=True, help='Number of confounders')
    p.add_argument('--r2', type=float, action='append', default=None, help='Confounding strength (repeatable)')
    p.add_argument('--contrasts', default=None, help='JSON file with the contrasts of interest')
    p.add_argument('--nc-spec', default=None, help='JSON file with the negative control contrasts')
    p.add_argument('--tol', type=float, default=None, help='Negative control compatibility tolerance')
    _add_common_args(p)

    p = sub.add_parser('sample', help='Posterior draws under a prior regime')
    _add_data_args(p)
    p.add_argument('--m', type=int, required=True, help='Number of confounders')
    p.add_argument('--regime', required=True, help='FLAT_GAMMA, R2_UNIFORM, NEGATIVE_CONTROL, HORSESHOE or '
                                                   'HORSESHOE_NC')
    p.add_argument('--iters', type=int, default=None, help='Iterations per chain')
    p.add_argument('--warmup', type=int, default=None, help='Warmup iterations per chain')
    p.add_argument('--chains', type=int, default=None, help='Number of chains')
    p.add_argument('--r2-upper', type=float, default=None, help='Upper bound of the uniform r2 prior')
    p.add_argument('--nc-spec', default=None, help='JSON file with the negative control treatments')
    p.add_argument('--tol', type=float, default=None, help='Negative control compatibility tolerance')
    _add_common_args(p)

    p = sub.add_parser('prop1', help='Bias prior draws against the rescaled Beta law')
    p.add_argument('--m-values', type=int, nargs='+', default=[2, 3, 5, 10], help='Numbers of confounders')
    p.add_argument('--k', type=int, default=10, help='Number of treatments of the simulated model')
    p.add_argument('--r2', type=float, default=0.5, help='Confounding strength')
    p.add_argument('--draws', type=int, default=100_000, help='Draws per m')
    p.add_argument('--input', default=None, help='Optional CSV to fit the factor model on')
    p.add_argument('--outcome-col', default=None, help='Name of the outcome column')
    p.add_argument('--contrasts', default=None, help='JSON file, the first contrast is used')
    _add_common_args(p)
    return parser


def parse_args(passed_args=None) -> argparse.Namespace:
    args = create_parser().parse_args(passed_args)

    path = args.config
    if path is not None:
        path = Path(path).resolve()

    out_dir = Path(args.out_dir) if args.out_dir is not None else get_out_dir(Path('output'))
    args.config = find_config_folder(path, out_dir)
    return args


def find_config_folder(arg_config_path: typing.Optional[Path], out_dir: typing.Optional[Path] = None) -> Path:

    if arg_config_path is None:
        # Nothing is specified, we try to find the config automatically
        check_path = []
        try:
            working_dir = Path(os.getcwd())
            check_path.append(working_dir / 'ConfoundSens')
            check_path.append(working_dir.with_name('ConfoundSens'))
        except ValueError:
            # the ValueError gets raised if the working_dir or its parent is empty (e.g. c:\ or /)
            pass

        check_path.append(Path.home() / 'ConfoundSens')   # User home

        # if we run in a venv check the venv, too
        v_env = os.environ.get('VIRTUAL_ENV', '')
        if v_env:
            check_path.append(Path(v_env) / 'ConfoundSens')  # Virtual env dir
    else:
        # in case the user specifies the config.yml we automatically switch to the parent folder
        if arg_config_path.name.lower() == 'config.yml' and arg_config_path.is_file():
            arg_config_path = arg_config_path.parent

        # Override automatic config detection if something is specified through command line
        check_path = [arg_config_path]

    for config_folder in check_path:
        config_folder = config_folder.resolve()
        if not config_folder.is_dir():
            continue

        config_file = config_folder / 'config.yml'
        if config_file.is_file():
            return config_folder

    # we have specified a folder, but the config does not exist so we will create it
    if arg_config_path is not None:
        return arg_config_path

    # nothing found: the config gets created next to the results
    if out_dir is not None:
        return out_dir.resolve()

    print('Config file "config.yml" not found!')
    print('Checked folders:\n - ' + '\n - '.join(str(k) for k in check_path))
    print('Please create file or specify a folder with the "-c" arg switch.')
    sys.exit(2)
