"""
geotime_rerank command line.

usage:
geotime_rerank <command> [query_id] [--config_path=run.yaml] [--gtr.tau_d=300]
    [--param gtr.tau_d=300] [--features semantic,distance] [--geojson] [--jobs=4]

Commands: ingest, embed, retrieve, rerank, eval, grid-search, ablate, synth, compare-segments.
"""

import argparse
import json
import sys

import draccus

from geotime_rerank.errors import (
    CorpusValidationError,
    EvaluationError,
    ProviderError,
    UnknownEventError,
)
from geotime_rerank.utils.logger import setup_logger_from_config

from .commands import COMMAND_HANDLERS
from .constant import CLI_LOGGER_NAME, COMMANDS, ExitCode
from .run_config import RunConfig


def translate_args(rest: list[str]) -> list[str]:
    """
    Rewrite the shorthand options into draccus overrides.

    ``--param a.b=v`` becomes ``--a.b=v``, ``--features a,b`` becomes
    ``--gtr.enabled_features=[a,b]``, a bare ``--geojson`` becomes ``--geojson=true`` and a
    leading positional argument becomes ``--query_id``.

    Raises:
        ValueError: On a shorthand option without its value.
    """
    args: list[str] = []
    tokens = list(rest)
    if tokens and not tokens[0].startswith("-"):
        args.append(f"--query_id={tokens.pop(0)}")

    i = 0
    while i < len(tokens):
        token = tokens[i]
        name, has_value, value = token.partition("=")
        if name in ("--param", "--features"):
            if not has_value:
                if i + 1 >= len(tokens):
                    raise ValueError(f"{name} needs a value")
                value = tokens[i + 1]
                i += 1
            if name == "--param":
                if "=" not in value:
                    raise ValueError(f"--param expects key=value, got {value!r}")
                args.append(f"--{value}")
            else:
                features = [f.strip() for f in value.split(",") if f.strip()]
                args.append(f"--gtr.enabled_features=[{','.join(features)}]")
        elif token == "--geojson":
            args.append("--geojson=true")
        else:
            args.append(token)
        i += 1
    return args


def _fail(code: ExitCode, error: Exception) -> int:
    doc = {"error": type(error).__name__, "message": str(error), "exit_code": int(code)}
    if isinstance(error, CorpusValidationError):
        doc["diagnostics"] = error.diagnostics
    print(json.dumps(doc, sort_keys=True, ensure_ascii=False))
    return int(code)


def main(argv: list[str] | None = None) -> int:
    """
    Run one command and print its JSON document on standard output.

    Returns:
        int: 0 on success, 1 on usage errors, 2 on data errors, 3 on provider errors.
    """
    parser = argparse.ArgumentParser(prog="geotime_rerank", add_help=True)
    parser.add_argument("command", choices=COMMANDS)
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        cli = parser.parse_args(argv[:1])
    except SystemExit as e:
        return int(ExitCode.ok if e.code == 0 else ExitCode.usage)

    try:
        config = draccus.parse(RunConfig, args=translate_args(argv[1:]))
    except SystemExit as e:
        return int(ExitCode.ok if e.code == 0 else ExitCode.usage)
    except Exception as e:
        return _fail(ExitCode.usage, e)

    try:
        logger = setup_logger_from_config(CLI_LOGGER_NAME, config.log_config)
        doc = COMMAND_HANDLERS[cli.command](config, logger)
    except (CorpusValidationError, UnknownEventError, EvaluationError, FileNotFoundError) as e:
        return _fail(ExitCode.data, e)
    except ProviderError as e:
        return _fail(ExitCode.provider, e)
    except ValueError as e:
        return _fail(ExitCode.usage, e)

    print(json.dumps(doc, sort_keys=True, ensure_ascii=False))
    return int(ExitCode.ok)


if __name__ == "__main__":
    sys.exit(main())
