#!/usr/bin/env python3
"""Regenerates the shipped fixtures. Output is deterministic."""

import math
import os
import random
import unicodedata

HERE = os.path.dirname(os.path.abspath(__file__))


def nfc(s):
    return unicodedata.normalize("NFC", s)


VERBS = [
    # lemma, sense_index, gloss, primary, secondary
    ("khelanā", 1, "play", "ME", "BA"),
    ("karanā", 1, "do", "ME", "KK"),
    ("bahanā", 1, "flow", "BA", "LL"),
    ("calanā", 1, "walk", "BA", "ME"),
    ("parakhanā", 1, "examine", "KK", "ME"),
    ("rahanā", 1, "stay", "LL", "BA"),
    ("honā", 1, "happen", "LL", "BA"),
    ("kātanā", 1, "cut", "PW", "ME"),
    ("mitānā", 1, "erase", "PW", "ME"),
    ("jhāmpanā", 1, "cover", "WW", "ME"),
    ("pahanānā", 1, "dress-up someone", "WW", "ME"),
    ("pānā", 1, "get", "GG", "LL"),
    ("lenā", 1, "take", "GG", "ME"),
    ("rap", 1, "criticize someone", "ME", "KK"),
    ("rap", 2, "perform rap music", "ME", "BA"),
    ("rap", 3, "hit or say something suddenly and forcefully", "ME", "PW"),
    # neighbours of cīranā
    ("nocanā", 1, "scratch", "PW", "ME"),
    ("ghisanā", 1, "rub", "PW", "ME"),
    ("chedanā", 1, "pierce", "PW", "ME"),
    ("khuracanā", 1, "scrape", "PW", "ME"),
    ("pīsanā", 1, "grind", "PW", "ME"),
    ("phulānā", 1, "inflate", "BA", "WW"),
    # neighbours of jānanā
    ("batānā", 1, "tell", "KK", "ME"),
    ("kahanā", 1, "say", "KK", "ME"),
    ("lenā-denā", 1, "transact", "GG", "ME"),
    ("mālūma", 1, "be known", "KK", "LL"),
    ("mānanā", 1, "accept", "KK", "GG"),
    ("pūchanā", 1, "ask", "KK", "ME"),
    # corpus verbs
    ("cunanā", 1, "choose", "ME", "GG"),
    ("jānā", 1, "go", "BA", "ME"),
    ("likhanā", 1, "write", "ME", "KK"),
    ("letanā", 1, "lie down", "LL", "BA"),
    ("giranā", 1, "fall", "BA", "PW"),
    ("denā", 1, "give", "GG", "ME"),
    ("sunanā", 1, "listen", "KK", "GG"),
    ("bolanā", 1, "speak", "KK", "ME"),
    ("dekhanā", 1, "see", "KK", "GG"),
    ("baithanā", 1, "sit", "LL", "BA"),
]

ADVERBS = [
    ("sasamaya", "timely", "TMP"),
    ("pās", "near", "SPT"),
    ("barbas", "unwillingly", "FRC"),
    ("lagbhag", "approximately", "MSR"),
    ("dogunā", "twofold", "MSR"),
    ("dugunā", "twofold", "MSR"),
    ("caugunā", "fourfold", "MSR"),
    ("sahasā", "suddenly", "TMP"),
    ("ekāeka", "all at once", "TMP"),
    ("acānaka", "unexpectedly", "TMP"),
    ("jaldī", "quickly", "TMP"),
    ("kal", "yesterday", "TMP"),
    ("yahām", "here", "SPT"),
    ("vahām", "there", "SPT"),
    ("bahut", "very", "MSR"),
    ("bilkul", "completely", "MSR"),
    ("zor-se", "forcefully", "FRC"),
]

ADJECTIVES = [
    ("dūsarā", "other", "LOC"),
    ("eka", "one", "QNT"),
    ("mātrihīn", "without mother", "REL"),
    ("mazbūt", "strong", "STR"),
    ("acchā", "good", "JUD"),
    ("kālā", "black", "PRP"),
]

EXAMPLES = {
    "khelanā": "bacce maidān mem khel rahe haim",
    "calanā": "vah dhīre dhīre calatā hai",
}

HEADER = "lemma\tlanguage\tpos\tsense_index\tgloss\tprimary_sense\tsecondary_sense\tprovenance\texample"


def write_lexicon():
    rows = []
    for lemma, idx, gloss, p, s in VERBS:
        rows.append((nfc(lemma), "verb", idx, gloss, p, s, EXAMPLES.get(lemma, "")))
    for lemma, gloss, c in ADVERBS:
        rows.append((nfc(lemma), "adverb", 1, gloss, c, "", ""))
    for lemma, gloss, c in ADJECTIVES:
        rows.append((nfc(lemma), "adjective", 1, gloss, c, "", ""))
    order = {"verb": 0, "adverb": 1, "adjective": 2}
    rows.sort(key=lambda r: (r[0].encode(), order[r[1]], r[2]))
    with open(os.path.join(HERE, "hi_lexicon.tsv"), "w", encoding="utf-8", newline="\n") as f:
        f.write(HEADER + "\n")
        for lemma, pos, idx, gloss, p, s, ex in rows:
            f.write(f"{lemma}\thi\t{pos}\t{idx}\t{gloss}\t{p}\t{s}\tmanual\t{ex}\n")

    # Gold labels for the propagation targets (what manual verification assigned).
    with open(os.path.join(HERE, "hi_gold.tsv"), "w", encoding="utf-8", newline="\n") as f:
        f.write(HEADER + "\n")
        gold = [
            ("cīranā", "verb", "tear", "PW", "ME"),
            ("jānanā", "verb", "know", "KK", "LL"),
            ("tigunā", "adverb", "threefold", "MSR", ""),
            ("yakāyaka", "adverb", "suddenly", "TMP", ""),
        ]
        for lemma, pos, gloss, p, s in sorted(gold, key=lambda g: (nfc(g[0]).encode(), order[g[1]])):
            f.write(f"{nfc(lemma)}\thi\t{pos}\t1\t{gloss}\t{p}\t{s}\tmanual\t\n")


DIM = 12


def unit(axis):
    v = [0.0] * DIM
    v[axis] = 1.0
    return v


def toward(axis, other, cos):
    e = math.sqrt(1.0 / (cos * cos) - 1.0)
    v = unit(axis)
    v[other] += e
    return v


def write_vectors():
    rows = []
    clusters = [
        # target, axis, [(neighbour, cosine)], [(near miss, cosine)]
        ("cīranā", 0,
         [("nocanā", 0.93), ("ghisanā", 0.89), ("chedanā", 0.86), ("khuracanā", 0.81), ("pīsanā", 0.77),
          ("phulānā", 0.72)],
         [("kātanā", 0.66), ("dekhanā", 0.58)]),
        ("jānanā", 1,
         [("batānā", 0.91), ("kahanā", 0.88), ("lenā-denā", 0.83), ("mālūma", 0.79), ("mānanā", 0.76),
          ("pūchanā", 0.74)],
         [("pānā", 0.64)]),
        ("tigunā", 2, [("dogunā", 0.94), ("dugunā", 0.9), ("caugunā", 0.85)], [("bahut", 0.61)]),
        ("yakāyaka", 3, [("sahasā", 0.92), ("ekāeka", 0.87), ("acānaka", 0.8)], [("barbas", 0.65)]),
    ]
    placed = set()
    for target, axis, near, miss in clusters:
        rows.append((target, unit(axis)))
        placed.add(target)
        for i, (word, cos) in enumerate(near + miss):
            rows.append((word, toward(axis, 4 + i % 8, cos)))
            placed.add(word)
    # Every other lexicon word sits on its own mix of the distractor axes, far from the targets.
    rng = random.Random(7)
    others = [v[0] for v in VERBS if v[1] == 1] + [a[0] for a in ADVERBS]
    skip = {"sunanā", "kal"}  # left out of the vocabulary on purpose
    for word in others:
        if word in placed or word in skip:
            continue
        v = [0.0] * DIM
        for d in range(4, DIM):
            v[d] = rng.uniform(-1.0, 1.0)
        rows.append((word, v))
        placed.add(word)
    with open(os.path.join(HERE, "hi_vectors.txt"), "w", encoding="utf-8", newline="\n") as f:
        f.write(f"{len(rows)} {DIM}\n")
        for word, v in rows:
            f.write(nfc(word) + " " + " ".join(f"{x:.6f}" for x in v) + "\n")
    with open(os.path.join(HERE, "targets_verb.txt"), "w", encoding="utf-8", newline="\n") as f:
        f.write(nfc("cīranā") + "\n" + nfc("jānanā") + "\n")
    with open(os.path.join(HERE, "targets_adverb.txt"), "w", encoding="utf-8", newline="\n") as f:
        f.write(nfc("tigunā") + "\n" + nfc("yakāyaka") + "\n")


NOUNS = ["rām", "sītā", "ghar", "kitāb", "patra", "bazār", "pānī", "mohan", "gāṁv", "kalam"]
CORPUS_ADVERBS = ["sasamaya", "pās", "barbas", "lagbhag", "jaldī", "kal", "yahām", "bahut", "zor-se",
                  "dhīre", "phira"]  # the last two are not in the lexicon
OTHER_VERBS = ["cunanā", "jānā", "letanā", "giranā", "denā", "sunanā", "bolanā", "ghūmanā"]  # ghūmanā: unknown
KARAKA_LABELS = ["k1", "k2", "k3", "k4", "k5", "k7p", "k7t", "K1", "k1s", "r6"]


def sentence(rng, i):
    verbs = ["calanā" if i < 51 else rng.choice(OTHER_VERBS)]
    if i < 50:
        verbs.append("likhanā")
    tokens = []
    for v_index, verb in enumerate(verbs):
        deps = []
        for _ in range(rng.randint(1, 3)):
            deps.append(("NOUN", rng.choice(NOUNS), rng.choice(KARAKA_LABELS)))
        for _ in range(rng.randint(0, 2)):
            deps.append(("ADV", rng.choice(CORPUS_ADVERBS), "adv"))
        rng.shuffle(deps)
        tokens.append((verb, deps))
    rows = []
    verb_ids = []
    next_id = 1
    for verb, deps in tokens:
        dep_ids = []
        for d in deps:
            dep_ids.append(next_id)
            next_id += 1
        verb_ids.append(next_id)
        next_id += 1
        rows.append((verb, deps, dep_ids, verb_ids[-1]))
    out = []
    for v_index, (verb, deps, dep_ids, vid) in enumerate(rows):
        for (upos, word, rel), did in zip(deps, dep_ids):
            out.append((did, word, word, upos, vid, rel))
        head = 0 if v_index == 0 else verb_ids[0]
        rel = "root" if v_index == 0 else "ccof"
        form = verb[:-2] + "tā" if verb.endswith("nā") else verb
        lemma = "_" if (i % 17 == 3 and v_index == 0) else verb
        if lemma == "_":
            form = verb
        out.append((vid, form, lemma, "VERB", head, rel))
    out.append((next_id, "।", "।", "PUNCT", verb_ids[0], "rsym"))
    out.sort()
    return out


def write_corpus():
    rng = random.Random(20171)
    lines = ["# generated fixture corpus: 100 sentences"]
    for i in range(100):
        lines.append(f"# sent_id = s{i + 1}")
        toks = sentence(rng, i)
        if i == 10:
            lines.append(f"{toks[0][0]}-{toks[0][0] + 1}\t_\t_\t_\t_\t_\t_\t_\t_\t_")
        for tid, form, lemma, upos, head, rel in toks:
            lines.append(f"{tid}\t{nfc(form)}\t{nfc(lemma)}\t{upos}\t_\t_\t{head}\t{rel}\t_\t_")
        lines.append("")
    with open(os.path.join(HERE, "corpus100.conllu"), "w", encoding="utf-8", newline="\n") as f:
        f.write("\n".join(lines) + "\n")


def write_profiles():
    # Sense-type counts proportional to a novel vs news split (per 100,000 verb tokens).
    novel = {"ME": 25215, "BA": 19084, "KK": 10216, "LL": 30817, "PW": 5917, "WW": 1360, "GG": 7387}
    news = {"ME": 38270, "BA": 15293, "KK": 5993, "LL": 23946, "PW": 5736, "WW": 977, "GG": 9782}
    for name, counts in (("novel", novel), ("news", news)):
        total = sum(counts.values())
        with open(os.path.join(HERE, f"{name}.profile.tsv"), "w", encoding="utf-8", newline="\n") as f:
            f.write("corpus\tsense\tcount\tpercent\n")
            for code in ["ME", "BA", "KK", "LL", "PW", "WW", "GG"]:
                f.write(f"{name}\t{code}\t{counts[code]}\t{100.0 * counts[code] / total:.3f}\n")
            f.write(f"# token_total\t{total}\n# out_of_lexicon\t0\n")


def write_annotations():
    rng = random.Random(5)
    codes = ["ME", "BA", "KK", "LL", "PW", "WW", "GG"]
    with open(os.path.join(HERE, "annotations.tsv"), "w", encoding="utf-8", newline="\n") as f:
        f.write("item_id\tlabel_a\tlabel_b\n")
        for i in range(60):
            a = rng.choice(codes)
            b = a if rng.random() < 0.75 else rng.choice(codes)
            f.write(f"verb{i:03d}:verb:1\t{a}\t{b}\n")


def write_service_files():
    with open(os.path.join(HERE, "tokens.tsv"), "w", encoding="utf-8", newline="\n") as f:
        f.write("# token\tuser\trole\n")
        f.write("contrib-token\tasha\tcontributor\n")
        f.write("contrib2-token\travi\tcontributor\n")
        f.write("review-token\tmeera\treviewer\n")
        f.write("review2-token\tkiran\treviewer\n")
    with open(os.path.join(HERE, "service.json"), "w", encoding="utf-8", newline="\n") as f:
        f.write('{\n  "listen": "127.0.0.1:8080",\n  "token_file": "tokens.tsv",\n'
                '  "data_dir": "../../ontosense-data",\n  "lexicons": {"hi": "hi_lexicon.tsv"},\n'
                '  "snapshot_every": 100\n}\n')


if __name__ == "__main__":
    write_lexicon()
    write_vectors()
    write_corpus()
    write_profiles()
    write_annotations()
    write_service_files()
