#!/usr/bin/env python3
"""Generate the synthetic 301-tweet fixture corpus and its planted-event manifest.

The corpus spans 2018-08-30 23:00:08 to 2018-09-02 10:50:19 and mixes one
large burst, several small single-topic stories, and background chatter whose
words are too rare to survive document-frequency pruning.

    python3 tools/make_fixture_corpus.py tests/data
"""

import json
import random
import sys
from datetime import datetime, timedelta, timezone
from pathlib import Path

SEED = 20180830
TOTAL = 301
START = datetime(2018, 8, 30, 23, 0, 8, tzinfo=timezone.utc)
END = datetime(2018, 9, 2, 10, 50, 19, tzinfo=timezone.utc)

# key, expected type, tweet count, core words, extra words, templates
TOPICS = [
    {
        "key": "skype_business_dos",
        "expected_type": "novel_and_trendy",
        "count": 45,
        "core": ["Skype for Business", "denial of service", "flaw", "Microsoft", "patch"],
        "extra": ["attackers", "crash", "users", "exploit"],
    },
    {
        "key": "android_wifi_leak",
        "expected_type": "first_story",
        "count": 6,
        "core": ["Android", "WiFi", "broadcast", "leaks", "location"],
        "extra": ["apps", "device", "privacy"],
    },
    {
        "key": "windows_task_scheduler",
        "expected_type": "first_story",
        "count": 7,
        "core": ["Windows Task Scheduler", "zero-day", "privilege", "escalation"],
        "extra": ["exploit", "published", "unpatched"],
    },
    {
        "key": "bank_of_spain_ddos",
        "expected_type": "first_story",
        "count": 5,
        "core": ["Bank of Spain", "DDoS", "website", "outage", "Catalonia"],
        "extra": ["hacktivists", "claimed", "disrupted"],
    },
    {
        "key": "apache_struts_rce",
        "expected_type": "first_story",
        "count": 6,
        "core": ["Apache Struts", "remote", "code", "execution", "vulnerability"],
        "extra": ["critical", "servers", "upgrade"],
    },
    {
        "key": "ransomwarrior_decryptor",
        "expected_type": "first_story",
        "count": 5,
        "core": ["RansomWarrior", "ransomware", "decryptor", "released", "free"],
        "extra": ["victims", "files", "researchers"],
    },
    {
        "key": "cisco_anyconnect",
        "expected_type": "first_story",
        "count": 5,
        "core": ["Cisco AnyConnect", "VPN", "client", "bug", "certificate"],
        "extra": ["advisory", "fixed", "validation"],
    },
    {
        "key": "bd_alaris_pump",
        "expected_type": "first_story",
        "count": 5,
        "core": ["BD Alaris", "infusion pump", "medical", "device", "hijack"],
        "extra": ["hospitals", "warning", "wireless"],
    },
    {
        "key": "printer_malware",
        "expected_type": "first_story",
        "count": 4,
        "core": ["printers", "malware", "firmware", "fax", "hacked"],
        "extra": ["office", "network", "takeover"],
    },
]

MISSPELL = {
    "vulnerability": "vulnerabilty",
    "patch": "pacth",
    "privilege": "privilage",
    "execution": "executon",
    "certificate": "certficate",
    "released": "relased",
    "medical": "medcal",
}

UNSUITABLE = ("sex", "porn", "dildo", "fuck", "nude", "xxx", "boob", "cock", "puss", "shit", "bitch", "milf",
              "fetish", "vagin", "penis", "escort", "erotic", "horny", "tits", "slut", "whore", "naked", "orgasm",
              "gay", "lesbian", "anal", "cum", "viagra", "cialis", "rape", "nigg", "fag", "busty", "hentai", "bdsm",
              "blowjob", "handjob", "threesome", "masturb", "stripper", "hooker", "cunt", "dick", "ass", "spank",
              "breast", "suck", "murder", "kill", "drug", "bondage", "lingerie", "jewish", "sperm", "thong")

FILLER = ["new", "report", "today", "just", "via", "warns", "read", "more", "alert", "update"]


def background_pool(dictionary: Path, stopwords: Path, banned: set) -> list:
    stop = set(stopwords.read_text().split())
    words = []
    for rank, line in enumerate(dictionary.read_text().splitlines()):
        word = line.split()[0]
        if rank < 3000 or not word.isalpha() or len(word) < 5:
            continue
        if word in stop or word in banned or any(bad in word for bad in UNSUITABLE):
            continue
        words.append(word)
        if len(words) >= 2500:
            break
    return words


def topic_text(rng: random.Random, topic: dict, index: int) -> str:
    core = list(topic["core"])
    if len(core) > 4 and index % 3 == 1:
        core.pop(rng.randrange(1, len(core)))
    words = core + rng.sample(topic["extra"], 1) + rng.sample(FILLER, 1)
    if index % 4 == 2:
        words = [MISSPELL.get(w, w) for w in words]
    head, rest = words[0], words[1:]
    rng.shuffle(rest)
    text = " ".join([head] + rest)
    if index % 5 == 3:
        text += f" https://t.co/{rng.getrandbits(40):010x}"
    if index % 6 == 4:
        text = "#infosec " + text
    return text


def main() -> None:
    out_dir = Path(sys.argv[1] if len(sys.argv) > 1 else "tests/data")
    root = Path(__file__).resolve().parent.parent
    rng = random.Random(SEED)

    banned = set()
    for t in TOPICS:
        for phrase in t["core"] + t["extra"]:
            banned.update(phrase.lower().replace("-", " ").split())
    banned.update(FILLER)
    pool = background_pool(root / "data" / "frequency_dictionary_en.txt", root / "data" / "stopwords_en.txt", banned)
    rng.shuffle(pool)
    uses = {w: 0 for w in pool}

    planted = sum(t["count"] for t in TOPICS)
    span = (END - START).total_seconds()
    records = []

    # topic tweets sit in a time window of their own; the burst is dense
    for ti, topic in enumerate(TOPICS):
        center = span * (0.15 + 0.08 * ti)
        width = span * (0.02 if ti == 0 else 0.05)
        for i in range(topic["count"]):
            offset = center + rng.uniform(-width, width)
            records.append((offset, "topic", ti, i))
    for i in range(TOTAL - planted - 2):
        records.append((rng.uniform(1, span - 1), "background", -1, i))
    records.append((0.0, "background", -1, -1))
    records.append((span, "background", -1, -2))
    records.sort(key=lambda r: r[0])

    cursor = 0
    tweets, manifest = [], {t["key"]: [] for t in TOPICS}
    for n, (offset, kind, ti, i) in enumerate(records):
        created = START + timedelta(seconds=offset)
        created = created.replace(microsecond=(created.microsecond // 1000) * 1000)
        tid = str(1035300000000000000 + n * 7919)
        user = {"id": str(900000 + rng.randrange(4000)), "followers_count": int(rng.lognormvariate(6.0, 1.8))}
        rec = {"id": tid, "created_at": created.strftime("%Y-%m-%dT%H:%M:%S.") + f"{created.microsecond // 1000:03d}Z"}
        if kind == "topic":
            topic = TOPICS[ti]
            text = topic_text(rng, topic, i)
            manifest[topic["key"]].append(tid)
            rec["relevance_label"] = "relevant"
            if i % 4 == 1:
                rec["text"] = f"RT @{rng.choice(['threatpost', 'bleepincomputer', 'thehackersnews', 'secnews'])}: {text[:60]}"
                rec["retweeted_status"] = {"full_text": text}
            elif i % 7 == 5:
                rec["text"] = "worth a read"
                rec["quoted_status"] = {"full_text": text}
            else:
                rec["text"] = text
        else:
            words = []
            while len(words) < rng.randint(5, 8):
                w = pool[cursor % len(pool)]
                cursor += 1
                if uses[w] < 2:
                    uses[w] += 1
                    words.append(w)
            rec["text"] = " ".join(words).capitalize()
            rec["relevance_label"] = "irrelevant"
        rec["user"] = user
        tweets.append(rec)

    assert len(tweets) == TOTAL
    out_dir.mkdir(parents=True, exist_ok=True)
    with open(out_dir / "corpus_301.jsonl", "w") as f:
        for rec in tweets:
            f.write(json.dumps(rec, ensure_ascii=False) + "\n")
    planted_events = [
        {"key": t["key"], "expected_type": t["expected_type"], "tweet_ids": manifest[t["key"]]} for t in TOPICS
    ]
    with open(out_dir / "corpus_301_planted.json", "w") as f:
        json.dump({"tweet_thresh": 10, "events": planted_events}, f, indent=2)
        f.write("\n")


if __name__ == "__main__":
    main()
