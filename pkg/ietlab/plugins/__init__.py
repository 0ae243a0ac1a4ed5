"""Subcommands, one module per file under ``plugins/<group>/``."""

import glob
import os
from os.path import basename, dirname, isfile, relpath, splitext


def _command_modules():
    root = dirname(__file__)
    paths = glob.glob(os.path.join(root, "*", "*.py"))
    return [
        "." + splitext(relpath(path, root))[0].replace(os.sep, ".")
        for path in paths
        if isfile(path) and not basename(path).startswith("_")
    ]


ALL_MODULES = sorted(_command_modules())
__all__ = ALL_MODULES + ["ALL_MODULES"]
