"""Prefix normal words: membership testing, Parikh-set indexing, enumeration and games."""

from .enumeration import (
    crit_count,
    enumerate_pn,
    ext_count,
    ext_count_density,
    gf_coefficient,
    pnw_count,
    pnw_density,
)
from .games import BlockGameConfig, count_block_outcomes, solve_game_v1, verify_block_lemma
from .index import ParikhIndex, build_index_suffix_sweep, pn_equivalent, pnf_one, pnf_zero, query_jumbled
from .membership import member_pn, survivor_ratio, test_doubling, test_vseq
from .words import BinaryWord, f_table, is_prefix_normal_naive, parse_word, prefix_ones

__version__ = "0.1.0"
