import hypothesis.strategies as st
from hypothesis import settings

from vklab.braid import BraidWord
from vklab.word import FreeWord

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def raw_letters(rank, max_size=12):
    return st.lists(st.integers(1, rank).flatmap(lambda i: st.sampled_from((i, -i))), max_size=max_size)


def free_words(rank, max_size=12):
    return raw_letters(rank, max_size).map(lambda ls: FreeWord(rank, tuple(ls)))


def braid_words(strands, max_size=10):
    return raw_letters(strands - 1, max_size).map(lambda ls: BraidWord(strands, tuple(ls)))
