"""
prefixcode コマンドライン
solve / encode / decode / bench サブコマンド
"""

import argparse
import json
import logging
import math
import random
import sys
import time
from pathlib import Path
from typing import List, Optional, Sequence

from .baseline import naive_optimal
from .codec import (assign_codewords, code_from_document, decode, encode,
                    parse_letters, render_letters)
from .config import get_settings, setup_logging
from .engine import Solution, compute_optimal
from .errors import (ExitCode, OracleBudgetExceeded, OracleMismatchError,
                     UsageError, handle_cli_errors)
from .model import Instance, parse_costs, validate_instance
from .oracle import brute_force_optimal
from .schemas import (BenchReport, BenchRowModel, CodeDocument,
                      OracleReportModel, RunConfig)

logger = logging.getLogger(__name__)


class _ArgumentParser(argparse.ArgumentParser):
    """使い方の誤りを UsageError として送出するパーサー"""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _comma_list(text: str) -> List[str]:
    return text.split(',')


def _int_list(text: str) -> List[int]:
    try:
        return [int(token) for token in text.split(',')]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {text!r}") from e


def build_parser() -> argparse.ArgumentParser:
    settings = get_settings()
    parser = _ArgumentParser(
        prog='prefixcode',
        description='Minimum-cost prefix codes for equiprobable words over letters of unequal cost',
    )
    sub = parser.add_subparsers(dest='command', required=True, parser_class=_ArgumentParser)

    solve = sub.add_parser('solve', help='compute an optimal code')
    solve.add_argument('--costs', help='letter costs, e.g. 2,2,5 or 1/2,1')
    solve.add_argument('-n', type=int, help='number of words')
    solve.add_argument('--format', choices=['json', 'text'], default='text')
    solve.add_argument('--trace', action='store_true', help='print the per-m cost sequence')
    solve.add_argument('--early-stop', action='store_true',
                       help='stop at the first non-decreasing cost')
    solve.add_argument('--verify-oracle', action='store_true',
                       help='cross-check against the brute-force oracle')
    solve.add_argument('--emit-tree', action='store_true', help='include the tree in the output')
    solve.add_argument('--glyphs', type=_comma_list, help='letter glyphs, e.g. .,_')
    solve.add_argument('--out', help='write the output to a file')

    for name in ('encode', 'decode'):
        codec = sub.add_parser(name, help=f'{name} with a solved code document')
        codec.add_argument('--code', help='path to a JSON document written by solve')
        codec.add_argument('--glyphs', type=_comma_list)
        codec.add_argument('--input', help='input text (default: stdin)')
        codec.add_argument('--format', choices=['json', 'text'], default='text')

    bench = sub.add_parser('bench', help='time the engine against the naive baseline')
    bench.add_argument('--costs')
    bench.add_argument('--random-r', type=int, help='draw r random integer costs per trial')
    bench.add_argument('--max-cost', type=int, default=1000)
    bench.add_argument('-n', type=int)
    bench.add_argument('--n-values', type=_int_list)
    bench.add_argument('--trials', type=int, default=settings.bench.trials)
    bench.add_argument('--seed', type=int, default=settings.bench.seed)
    bench.add_argument('--format', choices=['json', 'text'], default='text')
    return parser


def _emit(text: str, out: Optional[str] = None):
    if out:
        Path(out).write_text(text + '\n', encoding='utf-8')
        logger.info(f"wrote {out}")
    else:
        print(text)


def _solve_text(doc: CodeDocument, cfg: RunConfig) -> str:
    lines = [
        f"optimal cost: {doc.optimal_cost}",
        f"optimal m: {doc.optimal_m}",
    ]
    if doc.denominator != 1:
        lines.append(f"denominator: {doc.denominator}")
    if cfg.trace:
        lines.append("trace:")
        lines.extend(f"  m={e.m} cost={e.cost}" for e in doc.trace)
    if doc.oracle is not None:
        lines.append(f"oracle: {doc.oracle.status}"
                     + (f" (cost {doc.oracle.cost})" if doc.oracle.cost is not None else ""))
    lines.append("codewords:")
    for cw in doc.codewords:
        word = render_letters(cw.letters, cfg.glyphs) or '(empty)'
        lines.append(f"  {cw.symbol}\t{word}\t{cw.length}")
    if doc.tree is not None:
        lines.append("tree:")
        lines.extend(f"  non-terminal {nt.rank}: parent={nt.parent} via={nt.child_index} depth={nt.depth}"
                     for nt in doc.tree.non_terminals)
    return "\n".join(lines)


def _check_glyphs(glyphs: Optional[Sequence[str]], r: int):
    if glyphs is not None and len(glyphs) < r:
        raise UsageError(f"need at least {r} glyphs, got {len(glyphs)}")


def _verify_oracle(instance: Instance, solution: Solution) -> OracleReportModel:
    budget = get_settings().oracle.budget
    try:
        result = brute_force_optimal(instance, budget=budget)
    except OracleBudgetExceeded as e:
        logger.warning(f"oracle skipped: {e.message}")
        print(f"warning: {e.message}; oracle check skipped", file=sys.stderr)
        return OracleReportModel(status='budget_exceeded', budget=budget)

    status = 'match' if result.cost == solution.optimal_cost else 'mismatch'
    return OracleReportModel(status=status, cost=result.cost,
                             nodes_explored=result.nodes_explored, budget=budget)


def run_solve(cfg: RunConfig) -> int:
    """solve: 最適符号を計算して出力"""
    instance = validate_instance(parse_costs(cfg.costs), cfg.n)
    _check_glyphs(cfg.glyphs, instance.r)

    solution = compute_optimal(instance, early_stop=cfg.early_stop)
    code = assign_codewords(solution.tree)

    oracle = _verify_oracle(instance, solution) if cfg.verify_oracle else None
    doc = CodeDocument.from_solution(solution, code, emit_tree=cfg.emit_tree, oracle=oracle)

    _emit(doc.to_json() if cfg.format == 'json' else _solve_text(doc, cfg), cfg.out)

    if oracle is not None and oracle.status == 'mismatch':
        raise OracleMismatchError(
            f"engine cost {solution.optimal_cost} differs from oracle cost {oracle.cost}",
            details={'engine': solution.optimal_cost, 'oracle': oracle.cost}
        )
    return ExitCode.SUCCESS


def _read_input(cfg: RunConfig) -> str:
    if cfg.input is not None:
        return cfg.input
    return sys.stdin.read()


def _load_document(path: str) -> CodeDocument:
    try:
        text = Path(path).read_text(encoding='utf-8')
    except OSError as e:
        raise UsageError(f"cannot read code document {path}: {e}") from e
    return CodeDocument.model_validate_json(text)


def run_codec(cfg: RunConfig) -> int:
    """encode / decode: 記号列と文字列の変換"""
    code = code_from_document(_load_document(cfg.code))
    _check_glyphs(cfg.glyphs, code.r)
    text = _read_input(cfg)

    if cfg.command == 'encode':
        try:
            symbols = [int(token) for token in text.split()]
        except ValueError as e:
            raise UsageError(f"symbols must be integers 0..{code.n - 1}: {e}") from e
        letters = encode(code, symbols)
        if cfg.format == 'json':
            print(json.dumps({'symbols': symbols, 'letters': letters}))
        else:
            print(render_letters(letters, cfg.glyphs))
    else:
        letters = parse_letters(text, code.r, cfg.glyphs)
        symbols = decode(code, letters)
        if cfg.format == 'json':
            print(json.dumps({'letters': letters, 'symbols': symbols}))
        else:
            print(" ".join(str(s) for s in symbols))
    return ExitCode.SUCCESS


def swap_bound(n: int, m_min: int, m_max: int) -> float:
    """Level による交換回数の上界"""
    return 2 * (m_max - m_min + 1) + 2 * (n - 1) * math.log(m_max / max(1, m_min - 1))


def run_bench(cfg: RunConfig) -> int:
    """bench: エンジンと素朴なベースラインの比較"""
    rng = random.Random(cfg.seed)
    fixed_costs = parse_costs(cfg.costs) if cfg.costs is not None else None
    rows: List[BenchRowModel] = []

    for n in cfg.bench_n_values():
        for trial in range(cfg.trials):
            if fixed_costs is not None:
                raw = fixed_costs
            else:
                raw = [rng.randint(1, cfg.max_cost) for _ in range(cfg.random_r)]
            instance = validate_instance(raw, n)

            start = time.perf_counter()
            solution = compute_optimal(instance)
            engine_seconds = time.perf_counter() - start

            start = time.perf_counter()
            baseline = naive_optimal(instance)
            baseline_seconds = time.perf_counter() - start

            if baseline.optimal_cost != solution.optimal_cost:
                raise OracleMismatchError(
                    f"engine cost {solution.optimal_cost} differs from baseline cost "
                    f"{baseline.optimal_cost} (n={n}, costs={list(instance.costs)})",
                    details={'n': n, 'costs': list(instance.costs)}
                )

            bound = (swap_bound(n, solution.m_min, solution.m_max)
                     if n > 1 else 0.0)
            if solution.swaps > bound:
                logger.warning(f"swap count {solution.swaps} exceeds bound {bound:.1f} "
                               f"(n={n}, r={instance.r})")

            rows.append(BenchRowModel(
                n=n, r=instance.r, trial=trial, costs=list(instance.costs),
                optimal_cost=solution.optimal_cost, optimal_m=solution.optimal_m,
                engine_seconds=engine_seconds, baseline_seconds=baseline_seconds,
                engine_swaps=solution.swaps, baseline_swaps=baseline.swaps,
                swap_bound=bound, degree_sum=solution.degree_sum,
            ))
            logger.info(f"bench n={n} r={instance.r}: engine {engine_seconds:.4f}s, "
                        f"baseline {baseline_seconds:.4f}s")

    if cfg.format == 'json':
        print(BenchReport(seed=cfg.seed, rows=rows).model_dump_json(indent=2))
    else:
        print("n\tr\ttrial\tcost\tm\tengine_s\tbaseline_s\tswaps\tbound")
        for row in rows:
            print(f"{row.n}\t{row.r}\t{row.trial}\t{row.optimal_cost}\t{row.optimal_m}\t"
                  f"{row.engine_seconds:.4f}\t{row.baseline_seconds:.4f}\t"
                  f"{row.engine_swaps}\t{row.swap_bound:.1f}")
    return ExitCode.SUCCESS


COMMANDS = {
    'solve': run_solve,
    'encode': run_codec,
    'decode': run_codec,
    'bench': run_bench,
}


@handle_cli_errors
def run(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(**vars(args))
    return COMMANDS[cfg.command](cfg)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """CLI エントリーポイント"""
    setup_logging()
    return run(argv)
