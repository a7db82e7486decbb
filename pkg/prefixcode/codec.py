"""
符号化・復号
最適木から符号語を割り当て、記号列と文字列を相互変換する
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import TYPE_CHECKING, Dict, List, Optional, Sequence, Tuple

from .engine import CodeTree
from .errors import (CorruptTreeError, DanglingSuffixError, InvalidDocumentError,
                     SymbolRangeError, UnknownPathError, UsageError)
from .model import Instance, validate_instance

if TYPE_CHECKING:
    from .schemas import CodeDocument

logger = logging.getLogger(__name__)

Word = Tuple[int, ...]


@dataclass(frozen=True)
class Code:
    """接頭符号（記号 s は words[s]）"""
    words: Tuple[Word, ...]
    lengths: Tuple[int, ...]
    instance: Instance

    @property
    def n(self) -> int:
        return len(self.words)

    @property
    def r(self) -> int:
        return self.instance.r

    @property
    def total_cost(self) -> int:
        return sum(self.lengths)

    @property
    def average_cost(self) -> Fraction:
        return Fraction(self.total_cost, self.n)

    def is_prefix_free(self) -> bool:
        """どの符号語も他の符号語の接頭辞でないことを確認"""
        for a in range(self.n):
            for b in range(self.n):
                if a != b and self.words[b][:len(self.words[a])] == self.words[a]:
                    return False
        return True

    @cached_property
    def _trie(self) -> Tuple[List[Dict[int, int]], Dict[int, int]]:
        # node 0 is the root; terminal_symbol maps trie node -> symbol
        children: List[Dict[int, int]] = [{}]
        terminal_symbol: Dict[int, int] = {}
        for symbol, word in enumerate(self.words):
            node = 0
            for letter in word:
                nxt = children[node].get(letter)
                if nxt is None:
                    children.append({})
                    nxt = len(children) - 1
                    children[node][letter] = nxt
                node = nxt
            terminal_symbol[node] = symbol
        return children, terminal_symbol


def assign_codewords(tree: CodeTree) -> Code:
    """木の終端ノードに符号語を割り当てる（辞書順）"""
    instance = tree.instance
    word_of: Dict[int, Word] = {}
    for nt in tree.non_terminals:
        if nt.rank == 1:
            word_of[1] = ()
            continue
        parent_word = word_of.get(nt.parent)
        if parent_word is None:
            raise CorruptTreeError(
                f"non-terminal {nt.rank} has unknown parent rank {nt.parent}",
                details={'rank': nt.rank, 'parent': nt.parent}
            )
        word_of[nt.rank] = parent_word + (nt.child_index,)

    entries = []
    for t in tree.terminals:
        if t.parent == 0:
            entries.append(((), 0))
            continue
        parent_word = word_of.get(t.parent)
        if parent_word is None:
            raise CorruptTreeError(
                f"terminal {tuple(t)} hangs from unknown parent rank {t.parent}",
                details={'parent': t.parent, 'child_index': t.child_index}
            )
        entries.append((parent_word + (t.child_index,), t.depth))

    entries.sort()
    return Code(
        words=tuple(word for word, _ in entries),
        lengths=tuple(length for _, length in entries),
        instance=instance,
    )


def encode(code: Code, symbols: Sequence[int]) -> List[int]:
    """記号列を文字列に符号化"""
    letters: List[int] = []
    for position, symbol in enumerate(symbols):
        if not 0 <= symbol < code.n:
            raise SymbolRangeError(
                f"symbol {symbol} at position {position} is outside 0..{code.n - 1}",
                details={'position': position, 'symbol': symbol}
            )
        letters.extend(code.words[symbol])
    return letters


def decode(code: Code, letters: Sequence[int]) -> List[int]:
    """文字列を記号列に復号（根から終端ノードへの走査）"""
    children, terminal_symbol = code._trie
    symbols: List[int] = []
    if not letters:
        return symbols

    node = 0
    word_start = 0
    for position, letter in enumerate(letters):
        if node == 0:
            word_start = position
        nxt = children[node].get(letter)
        if nxt is None:
            raise UnknownPathError(
                f"unknown path at position {position}: letter {letter} "
                f"does not continue any codeword",
                position=position,
                details={'letter': letter, 'word_start': word_start}
            )
        node = nxt
        symbol = terminal_symbol.get(node)
        if symbol is not None:
            symbols.append(symbol)
            node = 0

    if node != 0:
        raise DanglingSuffixError(
            f"dangling suffix at position {word_start}",
            position=word_start,
            details={'length': len(letters)}
        )
    return symbols


def render_letters(letters: Sequence[int], glyphs: Optional[Sequence[str]] = None) -> str:
    """文字列を表示用テキストに変換"""
    if not glyphs:
        return " ".join(str(letter) for letter in letters)
    separator = "" if all(len(g) == 1 for g in glyphs) else " "
    return separator.join(glyphs[letter - 1] for letter in letters)


def parse_letters(text: str, r: int, glyphs: Optional[Sequence[str]] = None) -> List[int]:
    """表示用テキストを文字列に変換"""
    if not glyphs:
        tokens = text.split()
        try:
            letters = [int(token) for token in tokens]
        except ValueError as e:
            raise UsageError(f"letters must be integers 1..{r}: {e}") from e
        return letters

    index_of = {glyph: i for i, glyph in enumerate(glyphs, start=1)}
    if all(len(g) == 1 for g in glyphs):
        tokens = [ch for ch in text if not ch.isspace()]
    else:
        tokens = text.split()

    letters = []
    for position, token in enumerate(tokens):
        letter = index_of.get(token)
        if letter is None:
            raise UnknownPathError(
                f"unknown glyph {token!r} at position {position}",
                position=position,
                details={'glyph': token}
            )
        letters.append(letter)
    return letters


def code_from_document(doc: 'CodeDocument') -> Code:
    """solve ドキュメントから Code を復元して検証"""
    instance = validate_instance(
        [Fraction(c, doc.denominator) for c in doc.costs], doc.n
    )
    if instance.costs != tuple(doc.costs):
        raise InvalidDocumentError(
            "document costs are not sorted integers over their denominator",
            details={'costs': doc.costs, 'denominator': doc.denominator}
        )

    codewords = sorted(doc.codewords, key=lambda cw: cw.symbol)
    if [cw.symbol for cw in codewords] != list(range(doc.n)):
        raise InvalidDocumentError(
            f"document must list symbols 0..{doc.n - 1} exactly once",
            details={'symbols': [cw.symbol for cw in codewords]}
        )

    code = code_from_words(instance, [tuple(cw.letters) for cw in codewords])
    for cw, length in zip(codewords, code.lengths):
        if cw.length != length:
            raise InvalidDocumentError(
                f"codeword for symbol {cw.symbol} has length {length}, document says {cw.length}",
                details={'symbol': cw.symbol}
            )
    if code.total_cost != doc.optimal_cost:
        raise InvalidDocumentError(
            f"codeword lengths sum to {code.total_cost}, document says {doc.optimal_cost}",
            details={'total': code.total_cost, 'optimal_cost': doc.optimal_cost}
        )
    return code


def code_from_words(instance: Instance, words: Sequence[Word]) -> Code:
    """符号語の一覧から Code を構築して検証"""
    for word in words:
        if any(not 1 <= letter <= instance.r for letter in word):
            raise InvalidDocumentError(
                f"codeword {list(word)} uses letters outside 1..{instance.r}",
                details={'word': list(word)}
            )
    lengths = tuple(sum(instance.letter_cost(letter) for letter in word) for word in words)
    code = Code(words=tuple(tuple(w) for w in words), lengths=lengths, instance=instance)
    if not code.is_prefix_free():
        raise InvalidDocumentError("codewords are not prefix-free")
    return code
