import os
from pathlib import Path
from typing import Optional

ENV_OUT_DIR = 'CONFOUNDSENS_OUT_DIR'


def get_out_dir(default: Optional[Path] = None) -> Optional[Path]:
    # The environment variable only provides the default, the command line always wins
    value = os.environ.get(ENV_OUT_DIR, '').strip()
    if value:
        return Path(value)
    return default
