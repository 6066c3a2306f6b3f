#!/usr/bin/env python3
"""Generate the committed synthetic fixture corpus under fixtures/synthetic/.

Deterministic (seeded); rerun only when the fixture needs to change, then
regenerate the golden files with scripts/regen_golden.py.
"""

from __future__ import annotations

import json
import random
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

OUT = ROOT / "fixtures" / "synthetic"
SEED = 20240221
DURATION = 660.0
VIDEO_ID = "synthetic-001"

# Four topical blocks so the segmenter has real boundaries to find.
TOPICS = [
    {
        "name": "nitrogen fixation",
        "lines": [
            "大豆田里的固氮作用其实来自根瘤菌",
            "根瘤菌是一类共生的细菌 它们住在豆科植物的根瘤里",
            "固氮酶把空气中的氮气转化为铵 这是固氮的关键反应",
            "植物为根瘤菌提供糖分 根瘤菌回报以可用的氮",
            "人工合成氨依赖哈伯法 Haber process 需要高温高压",
            "固氮酶遇到氧气会失活 根瘤会制造豆血红蛋白保护它",
            "科学家最近发现了能固氮的真核生物 nitroplast 硝化质体",
            "这种藻类把固氮细菌内共生成了细胞器",
            "农业上轮作豆科植物可以给土壤补充氮元素",
            "根瘤菌和豆科植物的共生是亿万年演化的结果",
        ],
    },
    {
        "name": "neutron stars",
        "lines": [
            "中子星是大质量恒星超新星爆发后的致密残骸",
            "一颗典型的中子星半径只有十公里左右 质量却超过太阳",
            "中子星物质一立方厘米就有上亿吨重",
            "支撑中子星的是中子简并压 Pauli 不相容原理在起作用",
            "脉冲星 pulsar 是快速自转的中子星 发出规律的射电脉冲",
            "蟹状星云 Crab nebula 中心就有一颗年轻的脉冲星",
            "当中子星合并时会产生引力波和重元素",
            "金和铂这些重元素很多来自中子星碰撞",
            "磁星 magnetar 拥有宇宙中最强的磁场",
            "中子星表面的引力比地球强两千亿倍",
        ],
    },
    {
        "name": "probability of irrationals",
        "lines": [
            "在零到一之间随机取一个实数 取到无理数的概率是一",
            "有理数是可数集 可数集的勒贝格测度为零",
            "测度论告诉我们概率就是集合的测度",
            "几乎处处 almost everywhere 是测度论的常用说法",
            "康托对角线法证明实数不可数",
            "圆周率 pi 和自然常数 e 都是无理数",
            "判断级数收敛可以用达朗贝尔判别法 ratio test",
            "调和级数发散 虽然每一项都越来越小",
            "无穷集合的大小要用基数来比较",
            "连续统假设问的是实数基数和可数基数之间有没有别的基数",
        ],
    },
    {
        "name": "lactose intolerance",
        "lines": [
            "乳糖不耐受的原因是乳糖酶在成年后减少",
            "乳糖酶把乳糖分解成葡萄糖和半乳糖",
            "没被分解的乳糖进入大肠被细菌发酵 产生气体",
            "北欧人群常见乳糖酶持续性 是近一万年的新突变",
            "酸奶和奶酪里的乳糖已经被发酵掉了大半",
            "无乳糖牛奶是预先用乳糖酶处理过的",
            "乳糖不耐受不是牛奶过敏 过敏是免疫反应",
            "人群里乳糖不耐受的比例在东亚高达百分之九十",
            "少量多次喝奶可以训练肠道菌群的耐受",
            "补充益生菌对部分人的乳糖消化有帮助",
        ],
    },
]

# (template, category) comment pools; {i} picks a topic-relevant filler.
KNOWLEDGE_POOLS = {
    "inquiry": [
        "为什么{t}会这样？",
        "{t}是怎么形成的？",
        "Why is the probability of irrational numbers equal to 1?",
        "固氮酶为什么怕氧气？",
        "中子星会继续塌缩成黑洞吗？",
        "乳糖酶吃多了有副作用吗？",
        "这个结论对所有人群都成立吗？",
        "What happens when two neutron stars merge?",
    ],
    "concept-noting": [
        "根瘤菌固氮作用",
        "中子简并压",
        "Pauli exclusion principle.",
        "勒贝格测度",
        "达朗贝尔判别法",
        "D'Alembert's criterion.",
        "乳糖酶持续性突变",
        "Crab nebula pulsar.",
        "哈伯法固氮",
        "豆血红蛋白",
    ],
    "experience-sharing": [
        "我小时候得过乳糖不耐受 喝牛奶就难受",
        "我家种过大豆 轮作之后地确实肥",
        "我们当年考试就考过达朗贝尔判别法",
        "我学过测度论 当时完全没看懂",
        "My family tried lactose-free milk and I remember it tasted sweeter",
        "我用过天文台的望远镜看过蟹状星云",
    ],
    "supplementary-knowledge": [
        "其实固氮的是根瘤菌 不是大豆本身",
        "补充一下 固氮酶里有铁钼辅因子",
        "Fun fact: gold on earth largely comes from neutron star mergers",
        "其实酸奶的乳糖大部分已经被发酵掉了",
        "据说最早的脉冲星信号曾被怀疑是外星文明",
        "冷知识 有理数在实数里是可数的",
        "其实 almost everywhere 在测度论里有严格定义",
    ],
    "interpretation-positive": [
        "我觉得这期讲得特别清楚",
        "确实讲得好 受益匪浅",
        "这个比喻太棒了 一下就明白了",
        "I think this explanation is brilliant and clear",
        "认为这期质量很高 支持",
    ],
    "interpretation-negative": [
        "我认为这里说得不对 有点误导",
        "感觉这段讲错了 和教材不一致",
        "I believe this part is misleading and wrong",
        "应该严谨一点 这里数据是错的",
    ],
    "interpretation-neutral": [
        "我觉得这要看定义怎么取",
        "I think it depends on the definition used",
        "感觉两种说法都有道理",
        "认为还需要更多证据",
    ],
}

JUNK = [
    "23333",
    "233333333",
    "666",
    "66666",
    "哈哈哈哈",
    "哈哈哈哈哈哈",
    "来了来了",
    "前方高能",
    "好耳熟",
    "草",
    "awsl",
    "？？？？",
    "！！！",
    "first",
    "打卡",
    "蹲一个后续",
]

FILLERS = ["根瘤菌", "中子星", "无理数", "乳糖酶", "脉冲星", "固氮酶"]

# Near-duplicate bursts: same idea posted by several viewers seconds apart.
DUPLICATE_BURSTS = [
    ("原来是根瘤菌在固氮", "supplementary-knowledge", 3),
    ("原来是根瘤菌固氮啊", "supplementary-knowledge", 2),
    ("中子星密度太离谱了", "interpretation-negative", 3),
    ("一立方厘米上亿吨 离谱", "interpretation-negative", 2),
    ("为什么无理数概率是一？", "inquiry", 3),
    ("乳糖酶持续性", "concept-noting", 2),
]


def srt_stamp(seconds: float) -> str:
    ms = round(seconds * 1000)
    h, rem = divmod(ms, 3600_000)
    m, rem = divmod(rem, 60_000)
    s, ms = divmod(rem, 1000)
    return f"{h:02d}:{m:02d}:{s:02d},{ms:03d}"


def build_transcript() -> list[tuple[float, float, str]]:
    rng = random.Random(SEED)
    lines = []
    block_len = DURATION / len(TOPICS)
    for b, topic in enumerate(TOPICS):
        start = b * block_len
        per_line = block_len / len(topic["lines"])
        for i, text in enumerate(topic["lines"]):
            s = start + i * per_line
            e = s + per_line - rng.uniform(0.3, 0.9)
            lines.append((round(s, 2), round(e, 2), text))
    return lines


def build_comments(transcript) -> list[tuple[float, str]]:
    rng = random.Random(SEED + 1)
    comments: list[tuple[float, str]] = []

    def anchor_time(topic_index: int) -> float:
        block_len = DURATION / len(TOPICS)
        base = topic_index * block_len
        return base + rng.uniform(2.0, block_len - 2.0)

    for category, pool in KNOWLEDGE_POOLS.items():
        per_template = {"inquiry": 5, "concept-noting": 4, "experience-sharing": 4,
                        "supplementary-knowledge": 4, "interpretation-positive": 5,
                        "interpretation-negative": 5, "interpretation-neutral": 5}[category]
        for template in pool:
            for _ in range(per_template):
                text = template.format(t=rng.choice(FILLERS))
                comments.append((round(anchor_time(rng.randrange(len(TOPICS))), 2), text))

    for text, _category, copies in DUPLICATE_BURSTS:
        base = anchor_time(rng.randrange(len(TOPICS)))
        base = round(base - (base % 20) + rng.uniform(1.0, 8.0), 2)  # keep the burst inside one 20s window
        for k in range(copies):
            comments.append((round(base + k * 1.5 + rng.uniform(0.0, 0.8), 2), text))

    # A few deliberately delayed reactions: posted 21-28 s after the block
    # they talk about, so segment mapping has something to pull backward.
    for text, topic_index in [
        ("原来固氮的关键反应是固氮酶", 0),
        ("中子简并压撑住了中子星", 1),
        ("可数集测度为零 涨知识了", 2),
    ]:
        block_len = DURATION / len(TOPICS)
        t = (topic_index + 1) * block_len + rng.uniform(1.0, 8.0)
        comments.append((round(min(t, DURATION - 1.0), 2), text))

    n_junk = 330 - len(comments)
    for _ in range(n_junk):
        comments.append((round(rng.uniform(0.5, DURATION - 0.5), 2), rng.choice(JUNK)))

    comments.sort(key=lambda c: c[0])
    return comments


def write_fixture() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    transcript = build_transcript()
    comments = build_comments(transcript)
    rng = random.Random(SEED + 2)

    srt_blocks = []
    for i, (s, e, text) in enumerate(transcript, start=1):
        srt_blocks.append(f"{i}\n{srt_stamp(s)} --> {srt_stamp(e)}\n{text}\n")
    (OUT / "transcript.srt").write_text("\n".join(srt_blocks), "utf-8")

    colors = [16777215, 16777215, 16777215, 65280, 16744192]
    rows = [
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>",
        "<i>",
        "  <chatserver>chat.example.org</chatserver>",
        f"  <chatid>{VIDEO_ID}</chatid>",
    ]
    posted0 = 1708473600  # fixed epoch so reruns are identical
    for i, (t, text) in enumerate(comments):
        mode = 1 if rng.random() < 0.9 else 5
        color = rng.choice(colors)
        posted = posted0 + i * 37
        user = f"u{rng.randrange(16**6):06x}"
        rows.append(f'  <d p="{t},{mode},25,{color},{posted},0,{user},{i + 1}">{text}</d>')
    # two junk rows real exports often contain: bad time field, empty text
    rows.append('  <d p="abc,1,25,16777215,1708473600,0,deadbe,900001">broken row</d>')
    rows.append(f'  <d p="12.0,1,25,16777215,1708473600,0,deadbe,900002"></d>')
    rows.append("</i>")
    (OUT / "danmaku.xml").write_text("\n".join(rows), "utf-8")

    (OUT / "meta.json").write_text(
        json.dumps(
            {
                "video_id": VIDEO_ID,
                "title": "固氮、中子星、测度与乳糖：一期四个科学问题",
                "duration": DURATION,
                "domain_tag": "science-mixed",
            },
            ensure_ascii=False,
            indent=2,
        )
        + "\n",
        "utf-8",
    )

    write_study()
    print(f"wrote fixture with {len(transcript)} transcript lines and {len(comments)} comments")


def write_study() -> None:
    """Seven synthetic per-video corpora where danmaku coverage strictly
    dominates comment coverage."""
    rng = random.Random(SEED + 3)
    domains = [
        ("health-1", ["乳糖酶", "葡萄糖", "半乳糖", "肠道菌群", "发酵", "过敏", "免疫"]),
        ("health-2", ["碱性食物", "酸碱平衡", "血液pH", "肾脏", "呼吸调节", "伪科学"]),
        ("astro-1", ["中子星", "脉冲星", "超新星", "引力波", "磁星", "简并压", "蟹状星云"]),
        ("astro-2", ["土星", "土星环", "卡西尼号", "泰坦", "潮汐力", "冰粒"]),
        ("math-1", ["无理数", "勒贝格测度", "可数集", "对角线法", "基数", "连续统"]),
        ("bio-1", ["根瘤菌", "固氮酶", "豆血红蛋白", "共生", "铁钼辅因子", "轮作"]),
        ("cs-1", ["哈希函数", "碰撞", "布隆过滤器", "假阳性", "位数组"]),
    ]
    corpora = []
    for video_id, entities in domains:
        n = len(entities)
        danmaku_hit = entities[: n - 1]  # all but one
        comment_hit = entities[: max(1, n - 3)]  # strictly fewer
        danmaku_texts = [f"这里讲的{e}好有意思" for e in danmaku_hit]
        comment_texts = [f"视频里{e}那段不错" for e in comment_hit]
        danmaku_texts.append("哈哈哈哈")
        comment_texts.append("收藏了")
        aliases = {}
        if video_id == "astro-1":
            aliases["蟹状星云"] = ["crab nebula"]
            danmaku_texts.append("the Crab Nebula pulsar is so young")
        rng.shuffle(danmaku_texts)
        rng.shuffle(comment_texts)
        corpora.append(
            {
                "video_id": video_id,
                "entities": entities,
                "danmaku": danmaku_texts,
                "comments": comment_texts,
                "aliases": aliases,
            }
        )
    (OUT / "study.json").write_text(json.dumps({"corpora": corpora}, ensure_ascii=False, indent=2) + "\n", "utf-8")


if __name__ == "__main__":
    write_fixture()
