"""
prefixcode エラーハンドリングシステム
例外階層、エラーレポート、終了コードへの対応付け
"""

import json
import logging
import sys
import traceback
from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum
from functools import wraps
from typing import Any, Callable, Dict, Optional

from pydantic import ValidationError

from .config import is_development

logger = logging.getLogger(__name__)


class ErrorType(Enum):
    """エラータイプの定義"""
    VALIDATION_ERROR = "validation_error"
    USAGE_ERROR = "usage_error"
    CORRUPT_STATE = "corrupt_state"
    CORRUPT_TREE = "corrupt_tree"
    INVALID_DOCUMENT = "invalid_document"
    OUT_OF_RANGE = "out_of_range"
    ORACLE_BUDGET = "oracle_budget"
    ORACLE_MISMATCH = "oracle_mismatch"
    DANGLING_SUFFIX = "dangling_suffix"
    UNKNOWN_PATH = "unknown_path"
    SYMBOL_OUT_OF_RANGE = "symbol_out_of_range"
    INTERNAL_ERROR = "internal_error"


class ExitCode:
    SUCCESS = 0
    USAGE = 1
    INTERNAL = 2
    ORACLE_MISMATCH = 3


EXIT_CODES = {
    ErrorType.VALIDATION_ERROR: ExitCode.USAGE,
    ErrorType.USAGE_ERROR: ExitCode.USAGE,
    ErrorType.INVALID_DOCUMENT: ExitCode.USAGE,
    ErrorType.OUT_OF_RANGE: ExitCode.USAGE,
    ErrorType.DANGLING_SUFFIX: ExitCode.USAGE,
    ErrorType.UNKNOWN_PATH: ExitCode.USAGE,
    ErrorType.SYMBOL_OUT_OF_RANGE: ExitCode.USAGE,
    ErrorType.ORACLE_BUDGET: ExitCode.USAGE,
    ErrorType.CORRUPT_STATE: ExitCode.INTERNAL,
    ErrorType.CORRUPT_TREE: ExitCode.INTERNAL,
    ErrorType.INTERNAL_ERROR: ExitCode.INTERNAL,
    ErrorType.ORACLE_MISMATCH: ExitCode.ORACLE_MISMATCH,
}


class PrefixCodeError(Exception):
    """prefixcode 例外の基底クラス"""
    error_type = ErrorType.INTERNAL_ERROR

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}


class InstanceValidationError(PrefixCodeError, ValueError):
    error_type = ErrorType.VALIDATION_ERROR


class UsageError(PrefixCodeError):
    error_type = ErrorType.USAGE_ERROR


class CorruptStateError(PrefixCodeError, RuntimeError):
    """エンジン状態の不変条件違反"""
    error_type = ErrorType.CORRUPT_STATE


class CorruptTreeError(PrefixCodeError, RuntimeError):
    error_type = ErrorType.CORRUPT_TREE


class InvalidDocumentError(PrefixCodeError, ValueError):
    """利用者が渡した符号ドキュメントが不正"""
    error_type = ErrorType.INVALID_DOCUMENT


class TreeRangeError(PrefixCodeError, ValueError):
    """目標の内部ノード数が m_min..m_max の範囲外"""
    error_type = ErrorType.OUT_OF_RANGE


class OracleBudgetExceeded(PrefixCodeError):
    error_type = ErrorType.ORACLE_BUDGET


class OracleMismatchError(PrefixCodeError):
    error_type = ErrorType.ORACLE_MISMATCH


class DecodeError(PrefixCodeError, ValueError):
    """復号エラー（位置情報付き）"""

    def __init__(self, message: str, position: int, details: Optional[Dict[str, Any]] = None):
        super().__init__(message, {'position': position, **(details or {})})
        self.position = position


class DanglingSuffixError(DecodeError):
    error_type = ErrorType.DANGLING_SUFFIX


class UnknownPathError(DecodeError):
    error_type = ErrorType.UNKNOWN_PATH


class SymbolRangeError(PrefixCodeError, ValueError):
    error_type = ErrorType.SYMBOL_OUT_OF_RANGE


@dataclass
class ErrorReport:
    """エラーレポート"""
    error_type: ErrorType
    message: str
    details: Dict[str, Any] = field(default_factory=dict)
    user_message: Optional[str] = None
    error_code: Optional[str] = None
    timestamp: Optional[str] = None

    def __post_init__(self):
        if self.timestamp is None:
            self.timestamp = datetime.now().isoformat()

        if self.user_message is None:
            self.user_message = self._get_user_friendly_message()

    def _get_user_friendly_message(self) -> str:
        """利用者向けのメッセージを生成"""
        user_messages = {
            ErrorType.VALIDATION_ERROR: "invalid instance",
            ErrorType.USAGE_ERROR: "usage error",
            ErrorType.CORRUPT_STATE: "internal invariant violated in the tree engine",
            ErrorType.CORRUPT_TREE: "malformed code tree",
            ErrorType.INVALID_DOCUMENT: "invalid code document",
            ErrorType.OUT_OF_RANGE: "requested tree is out of range",
            ErrorType.ORACLE_BUDGET: "instance too large for the brute-force oracle",
            ErrorType.ORACLE_MISMATCH: "engine and oracle disagree",
            ErrorType.DANGLING_SUFFIX: "input ends in the middle of a codeword",
            ErrorType.UNKNOWN_PATH: "input is not a concatenation of codewords",
            ErrorType.SYMBOL_OUT_OF_RANGE: "symbol out of range",
            ErrorType.INTERNAL_ERROR: "internal error",
        }
        return user_messages.get(self.error_type, "unknown error")

    @property
    def exit_code(self) -> int:
        return EXIT_CODES.get(self.error_type, ExitCode.INTERNAL)

    def format(self, verbose: bool = False) -> str:
        text = f"error: {self.message}"
        if verbose and self.details:
            text += f" {json.dumps(self.details, ensure_ascii=False, default=str)}"
        return text


class ErrorHandler:
    """エラーハンドラー"""

    def handle_error(self, error: Exception,
                     error_type: Optional[ErrorType] = None) -> ErrorReport:
        """例外を処理して ErrorReport を返す"""
        if error_type is None:
            error_type = getattr(error, 'error_type', ErrorType.INTERNAL_ERROR)

        report = ErrorReport(
            error_type=error_type,
            message=getattr(error, 'message', None) or str(error),
            details=dict(getattr(error, 'details', {}) or {}),
            error_code=self._generate_error_code(error_type)
        )

        self._log_error(report)
        return report

    def _generate_error_code(self, error_type: ErrorType) -> str:
        timestamp = datetime.now().strftime("%Y%m%d%H%M%S")
        return f"{error_type.value.upper()}_{timestamp}"

    def _log_error(self, report: ErrorReport):
        error_info = {
            'error_code': report.error_code,
            'error_type': report.error_type.value,
            'message': report.message,
            'user_message': report.user_message,
            'details': report.details,
            'timestamp': report.timestamp,
        }
        if report.exit_code == ExitCode.INTERNAL:
            error_info['traceback'] = traceback.format_exc()
            logger.error(f"prefixcode error: {json.dumps(error_info, ensure_ascii=False, indent=2, default=str)}")
        else:
            logger.info(f"prefixcode error: {json.dumps(error_info, ensure_ascii=False, indent=2, default=str)}")


# グローバルエラーハンドラーインスタンス
error_handler = ErrorHandler()


def handle_cli_errors(func: Callable[..., int]) -> Callable[..., int]:
    """CLIコマンド用デコレーター: 例外を終了コードに変換"""
    @wraps(func)
    def wrapper(*args, **kwargs) -> int:
        try:
            return func(*args, **kwargs)
        except PrefixCodeError as e:
            report = error_handler.handle_error(e)
        except ValidationError as e:
            messages = "; ".join(err['msg'] for err in e.errors())
            report = error_handler.handle_error(UsageError(messages), ErrorType.USAGE_ERROR)
        except Exception as e:
            report = error_handler.handle_error(e, ErrorType.INTERNAL_ERROR)

        print(report.format(verbose=is_development()), file=sys.stderr)
        return report.exit_code
    return wrapper
