"""
入出力スキーマ
CLI 設定の検証と JSON ドキュメントのモデル
"""

from typing import TYPE_CHECKING, List, Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from .engine import CodeTree, Solution

if TYPE_CHECKING:
    from .codec import Code

Command = Literal['solve', 'encode', 'decode', 'bench']


class RunConfig(BaseModel):
    """検証済みの CLI 設定"""
    command: Command
    costs: Optional[str] = Field(None, description="カンマ区切りの文字コスト")
    n: Optional[int] = Field(None, description="語数")
    format: Literal['json', 'text'] = 'text'
    trace: bool = False
    early_stop: bool = False
    verify_oracle: bool = False
    emit_tree: bool = False
    glyphs: Optional[List[str]] = None
    out: Optional[str] = None

    # encode / decode
    code: Optional[str] = Field(None, description="solve が出力した JSON ドキュメントのパス")
    input: Optional[str] = None

    # bench
    n_values: Optional[List[int]] = None
    random_r: Optional[int] = None
    max_cost: int = 1000
    trials: int = 1
    seed: int = 0

    @field_validator('glyphs')
    @classmethod
    def validate_glyphs(cls, v):
        if v is None:
            return v
        if any(not glyph for glyph in v):
            raise ValueError('glyphs must be non-empty')
        if any(ch.isspace() for glyph in v for ch in glyph):
            raise ValueError('glyphs must not contain whitespace')
        if len(set(v)) != len(v):
            raise ValueError('glyphs must be distinct')
        return v

    @field_validator('n_values')
    @classmethod
    def validate_n_values(cls, v):
        if v is not None and not v:
            raise ValueError('n-values must not be empty')
        return v

    @field_validator('random_r')
    @classmethod
    def validate_random_r(cls, v):
        if v is not None and v < 2:
            raise ValueError(f'random-r must be at least 2, got {v}')
        return v

    @field_validator('max_cost', 'trials')
    @classmethod
    def validate_positive(cls, v):
        if v < 1:
            raise ValueError(f'must be at least 1, got {v}')
        return v

    @model_validator(mode='after')
    def check_required(self):
        if self.command == 'solve':
            if self.costs is None or self.n is None:
                raise ValueError('solve requires --costs and -n')
        elif self.command == 'bench':
            if self.costs is None and self.random_r is None:
                raise ValueError('bench requires --costs or --random-r')
            if self.n is None and self.n_values is None:
                raise ValueError('bench requires -n or --n-values')
        elif self.code is None:
            raise ValueError(f'{self.command} requires --code')
        return self

    def bench_n_values(self) -> List[int]:
        return list(self.n_values) if self.n_values else [self.n]


class TraceEntryModel(BaseModel):
    m: int
    cost: int


class CodewordModel(BaseModel):
    symbol: int
    letters: List[int]
    length: int


class NonTerminalModel(BaseModel):
    rank: int
    parent: int
    child_index: int
    depth: int


class TerminalModel(BaseModel):
    depth: int
    parent: int
    child_index: int


class TreeModel(BaseModel):
    non_terminals: List[NonTerminalModel]
    terminals: List[TerminalModel]

    @classmethod
    def from_tree(cls, tree: CodeTree) -> 'TreeModel':
        return cls(
            non_terminals=[NonTerminalModel(**nt._asdict()) for nt in tree.non_terminals],
            terminals=[TerminalModel(**t._asdict()) for t in tree.terminals],
        )


class OracleReportModel(BaseModel):
    """オラクル照合の結果"""
    status: Literal['match', 'mismatch', 'budget_exceeded']
    cost: Optional[int] = None
    nodes_explored: Optional[int] = None
    budget: int


class CodeDocument(BaseModel):
    """solve の JSON ドキュメント（encode / decode の入力）"""
    costs: List[int]
    denominator: int
    n: int
    optimal_m: int
    optimal_cost: int
    trace: List[TraceEntryModel]
    codewords: List[CodewordModel]
    tree: Optional[TreeModel] = None
    oracle: Optional[OracleReportModel] = None

    @classmethod
    def from_solution(cls, solution: Solution, code: 'Code', emit_tree: bool = False,
                      oracle: Optional[OracleReportModel] = None) -> 'CodeDocument':
        instance = code.instance
        return cls(
            costs=list(instance.costs),
            denominator=instance.denominator,
            n=instance.n,
            optimal_m=solution.optimal_m,
            optimal_cost=solution.optimal_cost,
            trace=[TraceEntryModel(m=e.m, cost=e.cost) for e in solution.trace],
            codewords=[
                CodewordModel(symbol=s, letters=list(word), length=length)
                for s, (word, length) in enumerate(zip(code.words, code.lengths))
            ],
            tree=TreeModel.from_tree(solution.tree) if emit_tree else None,
            oracle=oracle,
        )

    def to_json(self) -> str:
        return self.model_dump_json(exclude_none=True, indent=2)


class BenchRowModel(BaseModel):
    n: int
    r: int
    trial: int
    costs: List[int]
    optimal_cost: int
    optimal_m: int
    engine_seconds: float
    baseline_seconds: float
    engine_swaps: int
    baseline_swaps: int
    swap_bound: float
    degree_sum: int


class BenchReport(BaseModel):
    seed: int
    rows: List[BenchRowModel]
