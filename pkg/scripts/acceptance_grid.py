"""
受け入れグリッド検証スクリプト
エンジンとオラクルの一致、既知インスタンスの再現を確認する
"""
import itertools
import logging
import sys
import time
from pathlib import Path

# プロジェクトルートをパスに追加
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from prefixcode.codec import assign_codewords
from prefixcode.config import LOG_FORMAT
from prefixcode.engine import compute_optimal
from prefixcode.model import validate_instance
from prefixcode.oracle import binary_reference, brute_force_optimal

# ロギング設定
logging.basicConfig(level=logging.INFO, format=LOG_FORMAT)
logger = logging.getLogger(__name__)

LETTER_COSTS = (1, 2, 3, 5)


def iter_grid():
    """r ∈ {2,3,4}、コストは {1,2,3,5} の多重集合、n ∈ 2..12"""
    for r in (2, 3, 4):
        for costs in itertools.combinations_with_replacement(LETTER_COSTS, r):
            for n in range(2, 13):
                yield costs, n


def check_oracle_grid() -> bool:
    """全グリッドでエンジンとオラクルのコストを照合"""
    start = time.perf_counter()
    failures = 0
    count = 0
    for costs, n in iter_grid():
        instance = validate_instance(costs, n)
        engine_cost = compute_optimal(instance).optimal_cost
        oracle_cost = brute_force_optimal(instance).cost
        count += 1
        if engine_cost != oracle_cost:
            failures += 1
            logger.error(f"mismatch costs={costs} n={n}: engine={engine_cost}, oracle={oracle_cost}")

    elapsed = time.perf_counter() - start
    logger.info(f"oracle grid: {count} instances, {failures} mismatches, {elapsed:.1f}s")
    return failures == 0


def check_known_instances() -> bool:
    """既知の値の再現"""
    ok = True

    solution = compute_optimal(validate_instance((2, 2, 5), 10))
    trace = [entry.cost for entry in solution.trace]
    if trace != [60, 59, 60] or solution.optimal_m != 6 or solution.optimal_cost != 59:
        logger.error(f"costs (2,2,5), n=10: trace={trace}, m={solution.optimal_m}")
        ok = False
    else:
        logger.info("costs (2,2,5), n=10: trace 60, 59, 60, optimal m=6")

    morse = compute_optimal(validate_instance((1, 2), 6))
    code = assign_codewords(morse.tree)
    if morse.optimal_cost != 23 or sorted(code.lengths) != [3, 3, 4, 4, 4, 5]:
        logger.error(f"costs (1,2), n=6: cost={morse.optimal_cost}, lengths={sorted(code.lengths)}")
        ok = False

    for n in range(2, 513):
        cost = compute_optimal(validate_instance((1, 1), n)).optimal_cost
        if cost != binary_reference(n):
            logger.error(f"binary n={n}: engine={cost}, closed form={binary_reference(n)}")
            ok = False
    return ok


def main():
    """メイン処理"""
    logger.info("=" * 50)
    logger.info("受け入れグリッド検証開始")
    logger.info("=" * 50)

    ok = check_known_instances()
    ok = check_oracle_grid() and ok

    logger.info("=" * 50)
    logger.info("検証完了" if ok else "検証失敗")
    logger.info("=" * 50)
    return ok


if __name__ == '__main__':
    try:
        success = main()
        sys.exit(0 if success else 1)
    except Exception as e:
        logger.error(f"検証中にエラー: {e}")
        sys.exit(1)
