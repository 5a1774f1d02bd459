"""
Run script for the Linear Code Distance Search

Command-line entry point. Sub-commands:
    search    run an experiment on a generator matrix file (default)
    verify    check a word against a code
    decode    decode a received word through a minimum-weight search
    generate  write a random full-rank generator matrix
"""

import argparse
import json
import logging
import os
import sys

import numpy as np
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

from algebra.finite_field import field_of_order
from codes.linear_code import LinearCode, brute_force_backend, decode, random_code
from codes.matrix_file import parse_matrix_file, parse_word, verify_codeword, write_matrix_file
from search.base_search import SearchParams
from search.main import ALGORITHMS, ENGINES, RunConfig, run_experiment, search_backend
from search.representation import REPRESENTATIONS

logger = logging.getLogger("run")

COMMANDS = ("search", "verify", "decode", "generate")
INTERRUPTED = 130


def configure_logging():
    logging.basicConfig(
        level=os.environ.get("LOG_LEVEL", "INFO").upper(),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=[
            logging.FileHandler(os.environ.get("LOG_FILE", "mindist.log")),
            logging.StreamHandler()
        ]
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="run.py",
        description="Estimate the minimum distance of linear codes over finite fields.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    search = commands.add_parser(
        "search",
        help="run an experiment (default command)",
        description="Run repeated seeded searches on a generator matrix and write a JSON report.",
        epilog="Other commands: verify, decode, generate (see 'run.py <command> --help').",
    )
    search.add_argument("--matrix", required=True, help="generator matrix file")
    search.add_argument("--algo", choices=ALGORITHMS, default="gga", help="search algorithm (default: gga)")
    search.add_argument("--repr", choices=REPRESENTATIONS, default=None,
                        help="chromosome representation (default: order; not allowed with brute)")
    search.add_argument("--pop", type=int, default=int(os.environ.get("SEARCH_POP_SIZE", 400)),
                        help="population size, even (default: 400)")
    search.add_argument("--evals", type=int, default=int(os.environ.get("SEARCH_MAX_EVALS", 500000)),
                        help="evaluation budget per run (default: 500000)")
    search.add_argument("--pc", type=float, default=None,
                        help="crossover probability (default: 0.7 discrete, 0.8 order)")
    search.add_argument("--pm", type=float, default=0.01, help="mutation probability by gene (default: 0.01)")
    search.add_argument("--tau", type=float, default=float(os.environ.get("SEARCH_TAU", 0.1)),
                        help="CHC threshold decrement rate (default: 0.1)")
    search.add_argument("--reinit", type=int, default=int(os.environ.get("SEARCH_MAX_REINIT", 100000)),
                        help="GGA evaluations without improvement before a restart (default: 100000)")
    search.add_argument("--seed", type=int, default=0, help="seed of the first run (default: 0)")
    search.add_argument("--runs", type=int, default=1, help="number of runs, seeds seed..seed+runs-1 (default: 1)")
    search.add_argument("--target", type=int, default=None, help="stop a run once this weight is reached")
    search.add_argument("--ax-m", type=int, default=2, help="arity of the algebraic crossover (default: 2)")
    search.add_argument("--chc-literal", action="store_true",
                        help="CHC mates pairs closer than the threshold instead of farther")
    search.add_argument("--diversity", action="store_true", help="record the population diversity per generation")
    search.add_argument("--out", default=None, help="report path (default: REPORT_DIR/<algo>_<repr>_<time>.json)")
    search.add_argument("--summary-csv", default=None, help="also write the aggregate row as CSV")

    verify = commands.add_parser("verify", help="check a word against a code")
    verify.add_argument("--matrix", required=True, help="generator matrix file")
    verify.add_argument("--word", required=True, help="word as packed integers, e.g. '1 2 1 3 6 3'")

    decoder = commands.add_parser("decode", help="decode a received word")
    decoder.add_argument("--matrix", required=True, help="generator matrix file")
    decoder.add_argument("--word", required=True, help="received word as packed integers")
    decoder.add_argument("--backend", choices=("brute",) + tuple(ENGINES), default="brute",
                         help="minimum-weight codeword backend (default: brute)")
    decoder.add_argument("--repr", choices=REPRESENTATIONS, default="order", help="representation of a search backend")
    decoder.add_argument("--pop", type=int, default=50, help="population size of a search backend (default: 50)")
    decoder.add_argument("--evals", type=int, default=20000, help="budget of a search backend (default: 20000)")
    decoder.add_argument("--seed", type=int, default=0, help="seed of a search backend (default: 0)")

    generate = commands.add_parser("generate", help="write a random full-rank generator matrix")
    generate.add_argument("--q", type=int, required=True, help="field order")
    generate.add_argument("--n", type=int, required=True, help="code length")
    generate.add_argument("--k", type=int, required=True, help="code dimension")
    generate.add_argument("--modulus", type=int, default=None, help="packed field modulus (default: built-in)")
    generate.add_argument("--seed", type=int, default=0, help="random seed (default: 0)")
    generate.add_argument("--out", required=True, help="output matrix file")
    return parser


def parse_args(argv=None) -> argparse.Namespace:
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0] not in COMMANDS:
        argv.insert(0, "search")
    return build_parser().parse_args(argv)


def command_search(args) -> int:
    params = SearchParams(
        population_size=args.pop,
        crossover_prob=args.pc,
        mutation_prob=args.pm,
        tau=args.tau,
        max_evals=args.evals,
        max_reinit=args.reinit,
        target_weight=args.target,
        seed=args.seed,
        ax_m=args.ax_m,
        chc_literal=args.chc_literal,
    )
    config = RunConfig(
        matrix_path=args.matrix,
        algorithm=args.algo,
        representation=args.repr,
        params=params,
        runs=args.runs,
        output_path=args.out,
        emit_diversity=args.diversity,
        summary_csv=args.summary_csv,
    )
    report = run_experiment(config)
    print(json.dumps(report["aggregate"], indent=2))
    return 0 if report["complete"] else INTERRUPTED


def command_verify(args) -> int:
    print(json.dumps(verify_codeword(args.matrix, args.word)))
    return 0


def command_decode(args) -> int:
    code = LinearCode(parse_matrix_file(args.matrix))
    if args.backend == "brute":
        backend = brute_force_backend
    else:
        params = SearchParams(population_size=args.pop, max_evals=args.evals, seed=args.seed)
        backend = search_backend(args.backend, args.repr, params)
    result = decode(code, parse_word(args.word), backend)
    print(json.dumps({
        "codeword": list(result.codeword.entries),
        "error": list(result.error.entries),
        "error_weight": result.error.weight,
        "error_detected": result.error_detected,
    }))
    return 0


def command_generate(args) -> int:
    field = field_of_order(args.q, args.modulus)
    code = random_code(field, args.k, args.n, np.random.default_rng(args.seed))
    write_matrix_file(code.generator, args.out, comment=f"random [{args.n},{args.k}]_{args.q} code, seed {args.seed}")
    print(args.out)
    return 0


HANDLERS = {
    "search": command_search,
    "verify": command_verify,
    "decode": command_decode,
    "generate": command_generate,
}


def main(argv=None) -> int:
    args = parse_args(argv)
    configure_logging()
    try:
        return HANDLERS[args.command](args)
    except KeyboardInterrupt:
        logger.warning("Interrupted")
        return INTERRUPTED
    except (ValueError, OSError) as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == '__main__':
    sys.exit(main())
