import random

import numpy as np
import pytest

from ck.errors import DataError, UnknownIdError
from ck.ingest import DanmakuComment
from ck.semantics import (
    EMBED_DIM,
    NOISE,
    CorpusStats,
    cluster_danmaku,
    cosine,
    dbscan,
    embed,
    extract_keyword,
    map_to_window,
    related_danmaku,
)
from ck.structure import KgWindow
from oracles import dbscan_oracle, partition_of


class TestEmbed:
    def test_empty_and_whitespace_zero(self):
        assert not embed("").any()
        assert not embed("  \t\n ").any()

    @pytest.mark.parametrize("text", ["a", "ab", "好", "根瘤菌是细菌", "hello world", "x" * 500])
    def test_nonempty_unit_norm(self, text):
        assert np.linalg.norm(embed(text)) == pytest.approx(1.0, abs=1e-6)

    def test_shape(self):
        assert embed("anything").shape == (EMBED_DIM,)

    def test_deterministic_across_calls(self):
        a, b = embed("固氮酶 nitrogenase"), embed("固氮酶 nitrogenase")
        assert np.array_equal(a, b)

    def test_known_fnv_vector(self):
        # Frozen spot check so any change to the hash or n-gram scheme is
        # loud: fnv1a64("ab") = 0x089c4407b545986a, and 0x6a = 106.
        v = embed("ab")
        nonzero = np.flatnonzero(v)
        assert nonzero.tolist() == [106]
        assert v[106] == pytest.approx(1.0)

    def test_whitespace_runs_collapse(self):
        assert np.array_equal(embed("a  b"), embed("a b"))
        assert np.array_equal(embed(" a b "), embed("a b"))

    def test_similar_texts_closer_than_unrelated(self):
        a = embed("根瘤菌可以固氮")
        b = embed("原来根瘤菌能固氮")
        c = embed("中子星的密度很大")
        assert cosine(a, b) > cosine(a, c)


def random_unit_vectors(rng, n, dim):
    out = []
    for _ in range(n):
        v = np.array([rng.gauss(0, 1) for _ in range(dim)])
        out.append(v / np.linalg.norm(v))
    return out


class TestDbscan:
    def test_single_point_below_min_pts_is_noise(self):
        assert dbscan([embed("x y")], eps=0.3, min_pts=2) == [NOISE]

    def test_identical_points_one_cluster(self):
        pts = [embed("同一句话")] * 5
        labels = dbscan(pts, eps=0.3, min_pts=3)
        assert labels == [0] * 5

    def test_matches_oracle_on_spec_example(self):
        rng = random.Random(40)
        pts = random_unit_vectors(rng, 40, 6)
        got = dbscan(pts, eps=0.3, min_pts=3)
        want = dbscan_oracle([p.tolist() for p in pts], 0.3, 3)
        assert partition_of(got) == partition_of(want)

    def test_matches_oracle_randomized(self):
        rng = random.Random(1234)
        for trial in range(30):
            n = rng.randrange(2, 65)
            dim = rng.choice([3, 4, 6, 8])
            pts = random_unit_vectors(rng, n, dim)
            # duplicate some points to exercise zero distances
            for _ in range(rng.randrange(0, 4)):
                pts[rng.randrange(n)] = pts[rng.randrange(n)]
            eps = rng.uniform(0.1, 0.6)
            min_pts = rng.choice([2, 3, 4])
            got = dbscan(pts, eps, min_pts)
            want = dbscan_oracle([p.tolist() for p in pts], eps, min_pts)
            assert partition_of(got) == partition_of(want), f"trial {trial}"

    def test_permutation_invariant_up_to_relabeling(self):
        rng = random.Random(99)
        pts = random_unit_vectors(rng, 30, 5)
        labels = dbscan(pts, 0.4, 2)
        perm = list(range(30))
        rng.shuffle(perm)
        permuted_labels = dbscan([pts[i] for i in perm], 0.4, 2)
        base_clusters, base_noise = partition_of(labels)
        perm_clusters, perm_noise = partition_of(permuted_labels)
        unmap = {new: old for new, old in enumerate(perm)}
        remapped = frozenset(frozenset(unmap[i] for i in cl) for cl in perm_clusters)
        assert remapped == base_clusters
        assert frozenset(unmap[i] for i in perm_noise) == base_noise


def mk(i, t, text, win=0, cat="inquiry"):
    return DanmakuComment(f"c{i}", "v", t, text), cat


class TestClusterDanmaku:
    def test_near_duplicates_one_cluster(self):
        items = [
            (DanmakuComment("a", "v", 1.0, "原来是根瘤菌"), "supplementary-knowledge"),
            (DanmakuComment("b", "v", 2.0, "原来是根瘤菌"), "supplementary-knowledge"),
            (DanmakuComment("c", "v", 3.0, "原来是根瘤菌"), "supplementary-knowledge"),
        ]
        clusters = cluster_danmaku(items, {"a": 0, "b": 0, "c": 0})
        assert len(clusters) == 1
        assert clusters[0].size == 3

    def test_singleton_bucket(self):
        items = [(DanmakuComment("a", "v", 1.0, "唯一评论"), "inquiry")]
        clusters = cluster_danmaku(items, {"a": 0})
        assert len(clusters) == 1
        assert clusters[0].representative_id == "a"

    def test_two_member_representative_is_earlier(self):
        items = [
            (DanmakuComment("late", "v", 9.0, "一样的话"), "inquiry"),
            (DanmakuComment("early", "v", 2.0, "一样的话"), "inquiry"),
        ]
        (cluster,) = cluster_danmaku(items, {"late": 0, "early": 0})
        assert cluster.representative_id == "early"

    def test_partition_property(self):
        rng = random.Random(5)
        texts = ["根瘤菌固氮", "固氮的根瘤菌", "中子星好重", "无理数概率", "乳糖酶", "测度论无理数"]
        items = []
        assignment = {}
        for i in range(60):
            c = DanmakuComment(f"c{i}", "v", rng.uniform(0, 100), rng.choice(texts))
            items.append((c, rng.choice(["inquiry", "concept-noting"])))
            assignment[c.id] = rng.randrange(3)
        clusters = cluster_danmaku(items, assignment)
        seen = [m for cl in clusters for m in cl.member_ids]
        assert sorted(seen) == sorted(c.id for c, _ in items)
        for cl in clusters:
            assert cl.representative_id in cl.member_ids

    def test_medoid_maximizes_mean_similarity(self):
        rng = random.Random(11)
        texts = ["固氮酶很怕氧气", "固氮酶遇氧失活", "固氮酶会被氧破坏", "今天天气不错"]
        items = [(DanmakuComment(f"c{i}", "v", float(i), rng.choice(texts)), "inquiry") for i in range(12)]
        assignment = {c.id: 0 for c, _ in items}
        by_id = {c.id: c for c, _ in items}
        for cl in cluster_danmaku(items, assignment):
            vecs = {m: embed(by_id[m].text) for m in cl.member_ids}
            if cl.size == 1:
                continue

            def mean_sim(m):
                return sum(cosine(vecs[m], vecs[o]) for o in cl.member_ids if o != m) / (cl.size - 1)

            best = mean_sim(cl.representative_id)
            assert all(mean_sim(m) <= best + 1e-12 for m in cl.member_ids)

    def test_category_and_window_separate_buckets(self):
        items = [
            (DanmakuComment("a", "v", 1.0, "一样的话"), "inquiry"),
            (DanmakuComment("b", "v", 2.0, "一样的话"), "concept-noting"),
            (DanmakuComment("c", "v", 3.0, "一样的话"), "inquiry"),
        ]
        clusters = cluster_danmaku(items, {"a": 0, "b": 0, "c": 1})
        assert len(clusters) == 3  # all separated despite identical text


def windows_for(duration, width=20.0):
    out = []
    i = 0
    start = 0.0
    while start < duration:
        end = min(duration, start + width)
        out.append(KgWindow(i, start, end, f"window {i} text"))
        i += 1
        start = end
    return out


class TestMapToWindow:
    def test_comment_inside_matching_window(self):
        windows = [KgWindow(0, 0, 20, "根瘤菌 固氮"), KgWindow(1, 20, 40, "中子星 密度")]
        vecs = [embed(w.text) for w in windows]
        c = DanmakuComment("a", "v", 25.0, "中子星 密度")
        a = map_to_window(c, windows, vecs)
        assert a.window_id == 1
        assert a.delay == 0.0

    def test_thirty_second_cap_excludes_old_window(self):
        windows = windows_for(100.0)
        vecs = [embed(w.text) for w in windows]
        # t=60 => window 0 ended 40 s ago: not a candidate even with identical text
        c = DanmakuComment("a", "v", 60.0, "window 0 text")
        a = map_to_window(c, windows, vecs)
        assert a.window_id != 0

    def test_future_window_beyond_slack_excluded(self):
        windows = windows_for(100.0)
        vecs = [embed(w.text) for w in windows]
        c = DanmakuComment("a", "v", 10.0, "window 3 text")
        a = map_to_window(c, windows, vecs)
        assert a.window_id != 3  # starts 50 s later

    def test_delayed_echo_pulled_back_iff_similarity_wins(self):
        # Comment at the start of window 2 quoting window 1's text, which
        # ended 10 s earlier: assigned back iff sim gain > penalty 0.5*(10/30).
        w1 = KgWindow(1, 20, 40, "勒贝格测度 可数集 测度为零")
        w2 = KgWindow(2, 40, 60, "达朗贝尔判别法 级数收敛")
        windows = [KgWindow(0, 0, 20, "开场白 废话"), w1, w2]
        vecs = [embed(w.text) for w in windows]
        c = DanmakuComment("a", "v", 50.0, "勒贝格测度 可数集 测度为零")
        sim1 = cosine(embed(c.text), vecs[1])
        sim2 = cosine(embed(c.text), vecs[2])
        a = map_to_window(c, windows, vecs)
        expected = 1 if 1.0 * (sim1 - sim2) > 0.5 * (10.0 / 30.0) else 2
        assert a.window_id == expected == 1
        assert a.delay == pytest.approx(10.0)

    def test_never_assigns_far_future_or_long_delay(self):
        rng = random.Random(21)
        windows = windows_for(200.0)
        vecs = [embed(w.text) for w in windows]
        for _ in range(200):
            t = rng.uniform(0, 199.9)
            c = DanmakuComment("x", "v", t, f"window {rng.randrange(10)} text")
            a = map_to_window(c, windows, vecs)
            w = windows[a.window_id]
            assert w.start <= t + 2.0
            assert a.delay <= 30.0
            assert a.delay == pytest.approx(max(0.0, t - w.end))

    def test_monotone_delay_penalty(self):
        # Same similarity everywhere: shrinking delay never lowers the score.
        windows = windows_for(100.0)
        vecs = [embed("identical text")] * len(windows)
        c = DanmakuComment("x", "v", 55.0, "identical text")
        a = map_to_window(c, windows, vecs)
        assert a.window_id == 2  # contains t: zero delay beats any delayed window

    def test_no_candidates_is_internal_error(self):
        windows = [KgWindow(0, 100.0, 120.0, "late window")]
        with pytest.raises(DataError):
            map_to_window(DanmakuComment("x", "v", 10.0, "t"), windows, [embed("late window")])


class TestExtractKeyword:
    def test_unique_token_wins(self):
        stats = CorpusStats.from_texts(["根瘤菌 固氮", "固氮 作用", "根瘤菌固氮好"])
        assert extract_keyword("固氮 nitroplast", stats) == "nitroplast"

    def test_single_token_comment(self):
        stats = CorpusStats.from_texts(["a b", "b c"])
        assert extract_keyword("pulsar", stats) == "pulsar"

    def test_tie_breaks_to_earliest(self):
        stats = CorpusStats.from_texts([])
        # both unseen, equal tf: earliest position wins
        assert extract_keyword("alpha beta", stats, frozenset()) == "alpha"

    def test_stopwords_excluded(self):
        stats = CorpusStats.from_texts(["the pulsar", "a pulsar"])
        assert extract_keyword("the amazing pulsar", stats, frozenset({"the"})) == "amazing"

    def test_all_stopword_falls_back_to_longest(self):
        stats = CorpusStats.from_texts([])
        assert extract_keyword("of the into", stats, frozenset({"of", "the", "into"})) == "into"


class TestRelatedDanmaku:
    COMMENTS = [
        DanmakuComment("t0", "v", 100.0, "固氮酶遇到氧气会失活"),
        DanmakuComment("dup", "v", 105.0, "固氮酶遇到氧气会失活"),
        DanmakuComment("far", "v", 120.0, "固氮酶遇到氧气会失活"),
        DanmakuComment("unrelated", "v", 101.0, "qwerty zzz"),
        DanmakuComment("same-entity", "v", 110.0, "completely different words"),
    ]

    def entities(self):
        return {"t0": "固氮酶", "dup": "固氮酶", "far": "固氮酶", "unrelated": None, "same-entity": "固氮酶"}

    def test_duplicate_within_radius_included(self):
        hits = related_danmaku("t0", self.COMMENTS, self.entities())
        ids = [h for h, _ in hits]
        assert "dup" in ids
        assert hits[0][0] == "dup"
        assert hits[0][1] == pytest.approx(1.0, abs=1e-6)

    def test_identical_text_outside_radius_excluded(self):
        ids = [h for h, _ in related_danmaku("t0", self.COMMENTS, self.entities())]
        assert "far" not in ids

    def test_low_cosine_different_entity_excluded(self):
        ids = [h for h, _ in related_danmaku("t0", self.COMMENTS, self.entities())]
        assert "unrelated" not in ids

    def test_same_entity_included_despite_low_cosine(self):
        ids = [h for h, _ in related_danmaku("t0", self.COMMENTS, self.entities())]
        assert "same-entity" in ids

    def test_unknown_id(self):
        with pytest.raises(UnknownIdError):
            related_danmaku("nope", self.COMMENTS, self.entities())
