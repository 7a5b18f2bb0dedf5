import pytest

from envrad.errors import InvalidInput
from envrad.verify import default_corpus, format_table, load_claims, verify_paper


def test_shipped_corpus_passes():
    outcomes = verify_paper()
    assert all(o.passed for o in outcomes), format_table(outcomes)
    assert len(outcomes) == len(load_claims(default_corpus()))


def test_empty_corpus(tmp_path):
    with pytest.raises(InvalidInput):
        verify_paper(tmp_path)
    (tmp_path / "claims.json").write_text('{"claims": []}')
    with pytest.raises(InvalidInput):
        verify_paper(tmp_path)
