"""
prefixcode 設定
環境変数（.env 対応）から実行時設定を読み込む
"""

import logging
import os
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from dotenv import load_dotenv

# Load environment variables
load_dotenv()

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


@dataclass(frozen=True)
class OracleSettings:
    """総当たりオラクル設定"""
    budget: int = 2_000_000


@dataclass(frozen=True)
class BenchSettings:
    """ベンチマーク設定"""
    seed: int = 0
    trials: int = 1


@dataclass(frozen=True)
class Settings:
    environment: str = 'development'
    log_level: str = 'WARNING'
    log_file: Optional[str] = None
    oracle: OracleSettings = field(default_factory=OracleSettings)
    bench: BenchSettings = field(default_factory=BenchSettings)


def _int_env(name: str, default: int) -> int:
    value = os.getenv(name)
    if value is None or not value.strip():
        return default
    try:
        return int(value)
    except ValueError:
        logging.getLogger(__name__).warning(f"{name}={value!r} is not an integer, using {default}")
        return default


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """環境変数から設定を構築"""
    return Settings(
        environment=os.getenv('PREFIXCODE_ENV', 'development'),
        log_level=os.getenv('PREFIXCODE_LOG_LEVEL', 'WARNING').upper(),
        log_file=os.getenv('PREFIXCODE_LOG_FILE') or None,
        oracle=OracleSettings(
            budget=_int_env('PREFIXCODE_ORACLE_BUDGET', 2_000_000),
        ),
        bench=BenchSettings(
            seed=_int_env('PREFIXCODE_BENCH_SEED', 0),
            trials=_int_env('PREFIXCODE_BENCH_TRIALS', 1),
        ),
    )


def get_environment() -> str:
    return get_settings().environment


def is_development() -> bool:
    """開発環境かどうかを判定"""
    return get_environment() == 'development'


def setup_logging(level: Optional[str] = None):
    """ログ設定"""
    settings = get_settings()
    handlers = [logging.StreamHandler()]
    if settings.log_file:
        handlers.append(logging.FileHandler(settings.log_file))

    logging.basicConfig(
        level=getattr(logging, (level or settings.log_level).upper(), logging.WARNING),
        format=LOG_FORMAT,
        handlers=handlers
    )
