"""
Shared fixtures: small trees, the exhaustive rooted-tree corpus and the ordinal corpus
"""

import os

import pytest
from hypothesis import settings

from ordinal import parse_ordinal
from tree import RootedTree, parse_tree, enumerate_rooted_trees

settings.register_profile('default', deadline=None, max_examples=60)
settings.register_profile('ci', deadline=None, max_examples=200)
settings.load_profile(os.environ.get('HYPOTHESIS_PROFILE', 'default'))

CORPUS_S = ('1', '2', '3', '4', '5', 'w', 'w+1', 'w+2', 'w*2', 'w*2+1', 'w^2', 'w^2+w', 'w^w')


def path_tree(n: int) -> RootedTree:
    return RootedTree([None] + list(range(n - 1)))


@pytest.fixture
def cherry():
    return parse_tree('(()())')


@pytest.fixture
def path3():
    return path_tree(3)


@pytest.fixture(scope='session')
def trees_up_to_7():
    """One representative of each of the 85 rooted-tree classes with at most 7 vertices"""
    return [t for n in range(1, 8) for t in enumerate_rooted_trees(n)]


@pytest.fixture(scope='session')
def trees_up_to_6():
    return [t for n in range(1, 7) for t in enumerate_rooted_trees(n)]


@pytest.fixture(scope='session')
def corpus_s():
    return sorted(parse_ordinal(text) for text in CORPUS_S)


@pytest.fixture
def tree_file(tmp_path):
    """Write tree text to a file and return its path"""
    def write(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return write
