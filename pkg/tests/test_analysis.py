import math
import random

import pytest

from ck.analysis import (
    CoverageCorpus,
    coverage_study,
    entity_coverage,
    wilcoxon_signed_rank,
)
from ck.errors import DataError, DegenerateInputError
from oracles import wilcoxon_exact_p_oracle

# Classic paired measurements (Student's sleep data, extra hours per drug);
# the expected exact p below was frozen from the enumeration oracle.
SLEEP_PAIRS = [
    (1.9, 0.7),
    (0.8, -1.6),
    (1.1, -0.2),
    (0.1, -1.2),
    (-0.1, -0.1),
    (4.4, 3.4),
    (5.5, 3.7),
    (1.6, 0.8),
    (4.6, 0.0),
    (3.4, 2.0),
]


class TestWilcoxon:
    def test_seven_pairs_one_direction(self):
        result = wilcoxon_signed_rank([(i + 2.0, i + 1.0) for i in range(7)])
        assert result.w == 0.0
        assert result.method == "exact"
        assert result.p_two_sided == pytest.approx(2 / 2**7, abs=1e-15)  # 0.015625
        assert f"{result.p_two_sided:.3f}" == "0.016"
        assert result.effect_size == pytest.approx(1.0)

    def test_all_zero_differences(self):
        with pytest.raises(DegenerateInputError):
            wilcoxon_signed_rank([(1.0, 1.0), (2.0, 2.0)])

    def test_empty(self):
        with pytest.raises(DataError):
            wilcoxon_signed_rank([])

    def test_textbook_ten_pairs_matches_oracle(self):
        result = wilcoxon_signed_rank(SLEEP_PAIRS)
        oracle_p = wilcoxon_exact_p_oracle(SLEEP_PAIRS)
        assert result.method == "exact"
        assert result.p_two_sided == pytest.approx(oracle_p, abs=1e-12)
        # frozen from the oracle: n_effective=9 (one zero difference dropped)
        assert result.n_effective == 9
        assert result.p_two_sided == pytest.approx(0.00390625, abs=1e-12)

    def test_exact_matches_oracle_randomized(self):
        rng = random.Random(77)
        for _ in range(150):
            n = rng.randrange(3, 13)
            pairs = [(rng.uniform(0, 10), rng.uniform(0, 10)) for _ in range(n)]
            if all(a == b for a, b in pairs):
                continue
            result = wilcoxon_signed_rank(pairs)
            assert result.p_two_sided == pytest.approx(wilcoxon_exact_p_oracle(pairs), abs=1e-12)

    def test_exact_with_tied_ranks_matches_oracle(self):
        rng = random.Random(78)
        for _ in range(100):
            n = rng.randrange(3, 11)
            # integer data forces tied |differences|
            pairs = [(rng.randrange(0, 5), rng.randrange(0, 5)) for _ in range(n)]
            if all(a == b for a, b in pairs):
                continue
            result = wilcoxon_signed_rank([(float(a), float(b)) for a, b in pairs])
            assert result.p_two_sided == pytest.approx(wilcoxon_exact_p_oracle(pairs), abs=1e-12)

    def test_antisymmetry(self):
        rng = random.Random(79)
        for _ in range(100):
            n = rng.randrange(2, 20)
            pairs = [(rng.uniform(0, 5), rng.uniform(0, 5)) for _ in range(n)]
            if all(a == b for a, b in pairs):
                continue
            fwd = wilcoxon_signed_rank(pairs)
            rev = wilcoxon_signed_rank([(b, a) for a, b in pairs])
            assert rev.z == pytest.approx(-fwd.z, abs=1e-12)
            assert rev.p_two_sided == pytest.approx(fwd.p_two_sided, abs=1e-15)
            assert rev.w == fwd.w

    def test_rank_test_invariant_under_monotone_transform(self):
        rng = random.Random(80)
        transforms = [lambda x: 3 * x + 7, lambda x: x**3, lambda x: math.atan(x), lambda x: math.exp(x / 10)]
        for _ in range(60):
            n = rng.randrange(3, 12)
            pairs = [(rng.uniform(-3, 3), rng.uniform(-3, 3)) for _ in range(n)]
            if all(a == b for a, b in pairs):
                continue
            base = wilcoxon_signed_rank(pairs)
            f = rng.choice(transforms)
            # Transforms apply to the differences' sign/rank structure only if
            # they are applied to both pair members; use an odd monotone map.
            mapped = [(f(a), f(b)) for a, b in pairs]
            got = wilcoxon_signed_rank(mapped)
            oracle_p = wilcoxon_exact_p_oracle(mapped)
            assert got.p_two_sided == pytest.approx(oracle_p, abs=1e-12)

    def test_normal_approx_close_to_exact_on_tie_free_data(self):
        rng = random.Random(81)
        for _ in range(200):
            n = rng.randrange(8, 13)
            pairs = [(rng.uniform(0, 100), rng.uniform(0, 100)) for _ in range(n)]
            result = wilcoxon_signed_rank(pairs)
            assert result.p_exact is not None and result.p_normal is not None
            assert abs(result.p_exact - result.p_normal) <= 0.03

    def test_large_sample_uses_normal_approx(self):
        rng = random.Random(82)
        pairs = [(rng.uniform(0, 10), rng.uniform(0, 10)) for _ in range(40)]
        result = wilcoxon_signed_rank(pairs)
        assert result.method == "normal-approx"
        assert result.effect_size == pytest.approx(abs(result.z) / math.sqrt(result.n_effective))
        assert 0.0 <= result.p_two_sided <= 1.0

    def test_z_sign_follows_direction(self):
        up = wilcoxon_signed_rank([(i + 2.0, float(i)) for i in range(8)])
        down = wilcoxon_signed_rank([(float(i), i + 2.0) for i in range(8)])
        assert up.z > 0 > down.z


class TestEntityCoverage:
    def test_exact_match(self):
        assert entity_coverage(["rhizobia"], ["the rhizobia are bacteria"]) == 1

    def test_alias_match(self):
        covered = entity_coverage(
            ["deoxyribonucleic acid"],
            ["DNA is discussed here"],
            {"deoxyribonucleic acid": ["DNA"]},
        )
        assert covered == 1

    def test_no_match(self):
        assert entity_coverage(["quasar"], ["nothing relevant"], {"quasar": ["qso"]}) == 0

    def test_case_and_whitespace_normalized(self):
        assert entity_coverage(["Crab  Nebula"], ["the crab nebula pulsar"]) == 1

    def test_cjk_substring(self):
        assert entity_coverage(["根瘤菌"], ["原来是根瘤菌在固氮"]) == 1

    def test_monotone_in_texts(self):
        rng = random.Random(9)
        entities = ["固氮酶", "中子星", "勒贝格测度", "pulsar", "乳糖酶"]
        texts = ["固氮酶怕氧", "中子星很重", "pulsar spotted", "今天天气不错", "乳糖酶分解乳糖"]
        for _ in range(100):
            k = rng.randrange(0, len(texts))
            subset = rng.sample(texts, k)
            more = subset + [rng.choice(texts)]
            assert entity_coverage(entities, more) >= entity_coverage(entities, subset)

    def test_empty_entities_rejected(self):
        with pytest.raises(DataError):
            entity_coverage([], ["text"])


def corpus(vid, entities, danmaku_hits, comment_hits):
    return CoverageCorpus(
        vid,
        tuple(entities),
        tuple(f"谈到{e}了" for e in danmaku_hits),
        tuple(f"视频里{e}不错" for e in comment_hits),
    )


class TestCoverageStudy:
    def seven_dominating(self):
        out = []
        for v in range(7):
            entities = [f"专有名词{v}{i}" for i in range(6)]
            out.append(corpus(f"v{v}", entities, entities[:5], entities[:2]))
        return out

    def test_paper_scale_study(self):
        study = coverage_study(self.seven_dominating())
        assert study.result is not None
        assert study.result.p_two_sided == pytest.approx(0.015625, abs=1e-15)
        assert study.result.effect_size == pytest.approx(1.0)
        assert all(p.danmaku_rate > p.comment_rate for p in study.pairs)
        assert "danmaku higher" in study.format_text()

    def test_identical_corpora_degenerate_surfaced(self):
        corpora = [corpus(f"v{i}", ["甲", "乙"], ["甲"], ["甲"]) for i in range(5)]
        study = coverage_study(corpora)
        assert study.result is None
        assert any("degenerate" in n for n in study.notes)

    def test_single_corpus_refused(self):
        with pytest.raises(DataError):
            coverage_study(self.seven_dominating()[:1])

    def test_small_study_warns(self):
        study = coverage_study(self.seven_dominating()[:3])
        assert any("little power" in n for n in study.notes)

    def test_report_dict_shape(self):
        d = coverage_study(self.seven_dominating()).to_dict()
        assert len(d["pairs"]) == 7
        assert d["test"]["method"] == "exact"
