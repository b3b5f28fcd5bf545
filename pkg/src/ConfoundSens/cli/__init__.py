from .run_config import RunConfig, SimulateRunConfig, ScreeRunConfig, ModelRunConfig, BoundsRunConfig, \
    SampleRunConfig, Prop1RunConfig
from .io import read_csv, read_json, check_numeric, load_dataset, parse_contrasts, load_contrasts, \
    coordinate_indices, to_jsonable, write_csv, write_json, write_metadata
from .cmd_simulate import cmd_simulate
from .cmd_scree import cmd_scree
from .cmd_bounds import cmd_bounds
from .cmd_sample import cmd_sample
from .cmd_prop1 import cmd_prop1
