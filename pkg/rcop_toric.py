import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional

import config
from blockpath import BlockFailure, is_block_graph, structural_audit
from graph_core import parse_graph, regularity_report, validate
from markov import MarkovMove, certify_fibers, completion_basis, rcop_basis, sort_moves, uncolored_basis
from symmetry import is_rcop
from toric_maps import completion, exponent_matrix_endpoint, exponent_matrix_full, rowspan_equal
from utils import FileUtils, JsonUtils, LogUtils, PreconditionError, RcopToricError
from verify import jordan_square_closed, rank_dimension_check, verify_vanishing

COMMANDS = ("check", "matrix", "completion", "basis", "fibers", "verify", "audit")
FORMATS = ("json", "text")
MAPS = ("endpoint", "full")
PARTS = ("uncolored", "linear", "all")


@dataclass
class RunConfig:
    command: str
    input_path: Optional[str] = None
    seed: int = config.DEFAULT_SEED
    degree_bound: int = config.DEFAULT_DEGREE_BOUND
    fiber_cap: int = config.DEFAULT_FIBER_CAP
    trials: int = config.DEFAULT_TRIALS
    output_format: str = "json"
    map_kind: str = "endpoint"
    part: str = "all"
    all_pairs: bool = False
    basis_path: Optional[str] = None

    def check(self):
        if self.command not in COMMANDS:
            raise PreconditionError(f"unknown command '{self.command}'")
        if self.output_format not in FORMATS:
            raise PreconditionError(f"unknown format '{self.output_format}'")
        if self.map_kind not in MAPS:
            raise PreconditionError(f"unknown map '{self.map_kind}'")
        if self.part not in PARTS:
            raise PreconditionError(f"unknown basis part '{self.part}'")
        for name in ("seed", "degree_bound", "fiber_cap", "trials"):
            if getattr(self, name) < 0:
                raise PreconditionError(f"{name} must be nonnegative")


@dataclass
class CommandResult:
    status: int
    payload: object
    text: Optional[str] = None


def read_basis(path):
    """Moves from a basis file: a JSON array of {"plus": [...], "minus": [...]}."""
    try:
        entries = json.loads(FileUtils.read_text(path))
    except json.JSONDecodeError as e:
        raise PreconditionError(f"basis file {path} is not JSON: {str(e)}")
    if not isinstance(entries, list):
        raise PreconditionError(f"basis file {path} must hold a JSON array")
    moves = [MarkovMove.from_dict(entry) for entry in entries]
    return sort_moves(m for m in moves if m is not None)


# -- commands ---------------------------------------------------------------

def _check(g, cfg):
    report = validate(g)
    payload = {"valid": report.valid, "connected": report.connected, "violations": report.to_dict()["violations"]}
    if not report.connected:
        payload.update({"block": False, "rcop": False})
        return CommandResult(1, payload)

    payload["regularity"] = regularity_report(g).to_dict()
    blocks = is_block_graph(g)
    payload["block"] = not isinstance(blocks, BlockFailure)
    payload["blocks" if payload["block"] else "block_witness"] = blocks.to_dict()

    verdict = is_rcop(g)
    payload["rcop"] = verdict.rcop
    payload["rcop_witness"] = verdict.to_dict()["witness"] if not verdict.rcop else None
    payload["group"] = verdict.group.to_dict()
    status = 0 if payload["block"] and payload["rcop"] else 1
    return CommandResult(status, payload)


def _matrix(g, cfg):
    matrix = exponent_matrix_endpoint(g) if cfg.map_kind == "endpoint" else exponent_matrix_full(g)
    return CommandResult(0, matrix.to_dict(), matrix.to_text())


def _completion(g, cfg):
    result = completion(g)
    return CommandResult(0, result.to_dict())


def _basis_moves(g, cfg):
    if cfg.part == "uncolored":
        return sort_moves(uncolored_basis(g))
    if cfg.part == "linear":
        return sort_moves(completion_basis(g, all_pairs=cfg.all_pairs))
    return rcop_basis(g, all_pairs=cfg.all_pairs)


def _basis(g, cfg):
    moves = _basis_moves(g, cfg)
    text = "".join(f"{move}    {move.binomial()}\n" for move in moves)
    return CommandResult(0, [move.to_dict() for move in moves], text)


def _fibers(g, cfg):
    moves = rcop_basis(g, all_pairs=cfg.all_pairs)
    report = certify_fibers(g, moves, cfg.degree_bound, cfg.fiber_cap)
    payload = report.to_dict()
    payload["moves"] = len(moves)
    return CommandResult(0 if not report.disconnected else 1, payload)


def _verify(g, cfg):
    external = cfg.basis_path is not None
    moves = read_basis(cfg.basis_path) if external else rcop_basis(g, all_pairs=cfg.all_pairs)
    vanishing = verify_vanishing(g, moves, cfg.trials, cfg.seed)
    completed = completion(g).graph
    jordan = jordan_square_closed(completed, cfg.trials, cfg.seed)
    dimension = rank_dimension_check(g)
    rowspan = rowspan_equal(exponent_matrix_endpoint(g), exponent_matrix_full(g), g)
    payload = {
        "vanishing": vanishing.to_dict(),
        "jordan": jordan.to_dict(),
        "dimension": dimension.to_dict(),
        "rowspan": rowspan.to_dict(),
    }
    if not vanishing.passed:
        # A foreign basis may simply be wrong; our own must not be
        status = 1 if external else 3
    elif not (jordan.closed and dimension.equal and rowspan.equal):
        status = 3
    else:
        status = 0
    return CommandResult(status, payload)


def _audit(g, cfg):
    report = structural_audit(g)
    return CommandResult(0 if report.passed else 1, report.to_dict())


HANDLERS = {
    "check": _check,
    "matrix": _matrix,
    "completion": _completion,
    "basis": _basis,
    "fibers": _fibers,
    "verify": _verify,
    "audit": _audit,
}


def execute(g, cfg):
    """Run one command on a parsed graph. Domain errors propagate."""
    cfg.check()
    LogUtils.info(f"Running '{cfg.command}' on a graph with {g.n} vertices")
    return HANDLERS[cfg.command](g, cfg)


def error_result(error):
    return CommandResult(error.exit_status, {"error": type(error).__name__, "message": str(error)})


def render(result, output_format):
    if output_format == "text":
        if result.text is not None:
            return result.text
        if isinstance(result.payload, dict):
            return "".join(
                f"{key}: {json.dumps(value, sort_keys=True, default=JsonUtils._default)}\n"
                for key, value in sorted(result.payload.items())
            )
    return JsonUtils.dumps(result.payload)


def run(cfg):
    """Parse the input, execute the command, and render its output.

    Returns (exit status, output text). Exit statuses: 0 success, 1 negative
    verdict, 2 input error, 3 internal verification failure.
    """
    try:
        graph = parse_graph(FileUtils.read_text(cfg.input_path))
        result = execute(graph, cfg)
    except RcopToricError as e:
        LogUtils.error(f"{type(e).__name__}: {str(e)}")
        result = error_result(e)
    return result.status, render(result, cfg.output_format)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="rcop-toric",
        description="Markov bases and symmetry checks for colored Gaussian graphical models on block graphs.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("graph", help="graph JSON file")
    parser.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    parser.add_argument("--degree", type=int, default=config.DEFAULT_DEGREE_BOUND, help="fiber degree bound")
    parser.add_argument("--cap", type=int, default=config.DEFAULT_FIBER_CAP, help="largest fiber to enumerate")
    parser.add_argument("--trials", type=int, default=config.DEFAULT_TRIALS)
    parser.add_argument("--format", choices=FORMATS, default="json")
    parser.add_argument("--map", choices=MAPS, default="endpoint")
    parser.add_argument("--part", choices=PARTS, default="all")
    parser.add_argument("--all-pairs", action="store_true", help="every pair of each linear class")
    parser.add_argument("--basis", help="basis file to verify instead of the generated one")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    cfg = RunConfig(
        command=args.command,
        input_path=args.graph,
        seed=args.seed,
        degree_bound=args.degree,
        fiber_cap=args.cap,
        trials=args.trials,
        output_format=args.format,
        map_kind=args.map,
        part=args.part,
        all_pairs=args.all_pairs,
        basis_path=args.basis,
    )
    status, output = run(cfg)
    sys.stdout.write(output)
    return status


if __name__ == "__main__":
    sys.exit(main())
