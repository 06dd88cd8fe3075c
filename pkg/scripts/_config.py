"""Tiny bridge from a dataclass config to argparse flags."""

import argparse
import dataclasses


def parse_config(cls, description=None, argv=None):
    parser = argparse.ArgumentParser(description=description)
    for f in dataclasses.fields(cls):
        parser.add_argument(f"--{f.name.replace('_', '-')}", type=type(f.default), default=f.default)
    return cls(**vars(parser.parse_args(argv)))
