#!/usr/bin/env python3
"""Regenerates the bundled demo data under data/.

Everything produced here is synthetic and dedicated to the public domain
(see data/README.md). The outputs are deterministic for a fixed seed, so the
checked-in files should only change when this script does.
"""

import json
import math
import random
from pathlib import Path

SEED = 20240601
OUT = Path(__file__).resolve().parent.parent / "data"

# The ten fixed rows every VAD-ranked lexicon file is expected to carry.
ANCHOR_ROWS = [
    ("aaaaaaah", 1, 0.606, 0.479, 0.291),
    ("aaaah", 2, 0.636, 0.520, 0.282),
    ("aardvark", 3, 0.490, 0.427, 0.437),
    ("aback", 4, 0.407, 0.385, 0.288),
    ("abacus", 5, 0.276, 0.510, 0.485),
    ("zoo", 20003, 0.520, 0.760, 0.580),
    ("zoological", 20004, 0.458, 0.667, 0.492),
    ("zoology", 20005, 0.347, 0.568, 0.509),
    ("zoom", 20006, 0.520, 0.490, 0.462),
    ("zucchini", 20007, 0.321, 0.510, 0.250),
]

FUNCTION_WORDS = """
the and that for with from this they them have has had was were are is be
been being not but his her its our your their what which when where who
them then than into onto over under again once here there all any both
each few more most other some such only own same so too very can will
just should now while about after before between during through against
""".split()

CONTENT_WORDS = """
abandon ability absence accept accident account across action admire advance
adventure afraid afternoon agony agree alarm alive alone amaze anchor anger
animal announce answer anxious appear apple approach argue arise army arrive
ashamed asleep assault astonish attack attempt autumn awake awful battle
beauty begin behave belief belong beneath betray beyond bitter blame blaze
bless blind blood bloom boat bold bone border bottle brave bread breathe
bridge bright broken brother burden burn burst calm candle capture care
carry castle catch cause caution cave cease celebrate chaos charm chase
cheer cherish child chill choice circle claim clash cliff climb cloud
coast cold collapse comfort command common companion conceal confess
conflict confuse conquer console courage cradle crash crawl create creek
crisis crowd cruel crush curious danger daring darkness dawn dazzle dear
decay deceive decide deep defeat defend delight demand depart descend
desert desire despair destroy devote difficult dim dinner disaster discover
distance distant distress disturb doubt dread dream drift drown dusk dust
eager early earth echo edge elated embrace emerge empty encounter endless
endure enemy energy enjoy enormous escape evening exact examine excite
exhaust expect explore faint fair faith fall famine fancy farewell fate
father fear feast feather fierce fight final fire flame flee floor flourish
flow flower fond forest forget forgive fortune fragile freedom fresh friend
fright frost frozen fury garden gather gaze gentle ghost giant gift glad
gleam gloom glory glow golden grace grand grasp grateful grave great grief
grim grow guard guest guide hand happy harbor harm harsh harvest hate haunt
haven heal heart hearth heaven heavy hello help hero hidden hill hold hollow
home honest honor hope horror house humble hunger hunt hurry hush idle
immense innocent inspire instant intense invite island joke journey joyous
keen kind kingdom kiss knock ladder lament lantern laugh lazy leap learn
leave legend lift light lively lonely long lose loud love loyal lucky lull
lumber luminous magic march market marvel meadow meet melody memory mend
mercy merry midnight mild mind miracle mirror misery mist moment moon
morning mountain mourn move murmur music mystery narrow nature nest night
noble noise north notice oath ocean offer open orchard pace pain pale
panic pardon path patient peace peak peril perish plain plan play plead
pleasant pledge plenty plunge poem point ponder praise pray precious
prepare present pride promise protect proud pull pulse pure pursue quake
quarrel quest quick quiet rage rain raise rally rapid rare reach rebel
reckon recover refuge refuse regret rejoice release relief remain remember
remote rescue resist respect rest restless retreat reunion reveal revenge
ridge rise risk river road roam roar rock rough ruin rumble rush sacred
sad safe sail salute savage save scare scatter scream search season secret
seek seize serene settle shadow shake share sharp shelter shine shiver
shore shout shudder sigh silent silver simple sing sink sleep slow small
smile smoke soar soft solace solemn song soothe sorrow soul sound spark
spirit splendid spring startle starve stay steady steep still storm story
strange stream street strength stretch strife strike strong struggle
stumble summer summit sunrise sunset surge surprise surrender survive
sweet swift tale tame tear tease tempest tender terror thank thicket
thought threat thrill thunder tide timber tired toil torment touch tower
tragic tranquil travel treasure tremble triumph trouble trust truth tumble
turmoil twilight union unite valley value vanish vast venture victory
vigil village violent vivid voice void voyage wail wait wake walk wander
warm warn waste watch water wave weary weep welcome whisper wild wind
winter wisdom wish wither witness woe wonder wood worry worship wound
wrath yearn yield young
""".split()

TENSION_MARKERS = ["ominous", "foreboding", "suspense", "uneasy", "looming", "apprehension"]
PUNISHMENT_MARKERS = ["penalty", "banishment", "scourge", "reprimand", "forfeit", "chastise"]
REWARD_MARKERS = ["bounty", "prize", "recompense", "laurels", "windfall", "tribute"]
VICTORY_MARKERS = ["conquest", "vanquish", "champion", "overcome", "prevail", "laurel"]


def build_lexicon(rng):
    anchors = {w for w, *_ in ANCHOR_ROWS}
    words = sorted(set(FUNCTION_WORDS) | set(CONTENT_WORDS) - anchors)
    assert all(w.isalpha() and w.islower() for w in words)
    assert all("abacus" < w < "zoo" for w in words), "keep generated ranks consistent"

    rows = list(ANCHOR_ROWS[:5])
    step = (20003 - 6) / (len(words) + 1)
    for i, word in enumerate(words):
        rank = 6 + int(i * step)
        arousal = round(rng.uniform(0.05, 0.95), 3)
        valence = round(rng.uniform(0.05, 0.95), 3)
        dominance = round(rng.uniform(0.05, 0.95), 3)
        rows.append((word, rank, arousal, valence, dominance))
    rows.extend(ANCHOR_ROWS[5:])

    ranks = [r for _, r, *_ in rows]
    assert len(set(ranks)) == len(ranks)

    lines = ["Word,Ranking,Arousal,Valence,Dominance"]
    for word, rank, a, v, d in rows:
        lines.append(f"{word},{rank},{a:.3f},{v:.3f},{d:.3f}")
    (OUT / "vad_lexicon.csv").write_text("\n".join(lines) + "\n")
    return {word: (a, v, d) for word, rank, a, v, d in rows}


def write_stopwords():
    lines = ["# Function words excluded from scoring."] + sorted(set(FUNCTION_WORDS))
    (OUT / "stopwords.txt").write_text("\n".join(lines) + "\n")


def build_story(rng, lexicon, filename, total_words, curve):
    """Generated narrative whose word choice tracks `curve(t)` in arousal."""
    content = [w for w in CONTENT_WORDS if w in lexicon]
    by_arousal = sorted(content, key=lambda w: lexicon[w][0])

    def pick_near(target):
        # Sample from a +/-0.12 arousal band around the target.
        lo = max(0.0, target - 0.12)
        hi = min(1.0, target + 0.12)
        band = [w for w in by_arousal if lo <= lexicon[w][0] <= hi]
        return rng.choice(band if band else content)

    words_out = []
    sentence = []
    sentences_in_par = 0
    paragraphs = []
    par_lines = []
    sentence_len = rng.randint(6, 14)

    while len(words_out) < total_words:
        t = len(words_out) / total_words
        target = curve(t)
        if rng.random() < 0.30:
            word = rng.choice(FUNCTION_WORDS)
        else:
            word = pick_near(target)
        words_out.append(word)
        sentence.append(word)
        if len(sentence) >= sentence_len:
            par_lines.append(" ".join(sentence).capitalize() + ".")
            sentence = []
            sentence_len = rng.randint(6, 14)
            sentences_in_par += 1
            if sentences_in_par >= rng.randint(4, 8):
                paragraphs.append(" ".join(par_lines))
                par_lines = []
                sentences_in_par = 0
    if sentence:
        par_lines.append(" ".join(sentence).capitalize() + ".")
    if par_lines:
        paragraphs.append(" ".join(par_lines))

    (OUT / filename).write_text("\n\n".join(paragraphs) + "\n")
    return len(words_out)


def build_corpus(rng, lexicon):
    n = build_story(
        rng, lexicon, "sample_story.txt", 25_643,
        lambda t: 0.5 + 0.22 * math.cos(2.0 * math.pi * t),  # fall, then recover
    )
    build_story(rng, lexicon, "rising_tale.txt", 12_400, lambda t: 0.30 + 0.42 * t)
    build_story(rng, lexicon, "fading_tale.txt", 11_800, lambda t: 0.72 - 0.42 * t)
    (OUT / "manifest.csv").write_text(
        "id,title,path\n"
        "sample_story,A Long Walk Through the Hills,sample_story.txt\n"
        "rising_tale,The Slow Climb,rising_tale.txt\n"
        "fading_tale,Embers at Dusk,fading_tale.txt\n"
    )
    return n


def build_structure_demo(rng):
    filler = [w for w in CONTENT_WORDS if len(w) > 3]
    classes = {
        "tension": TENSION_MARKERS,
        "punishment": PUNISHMENT_MARKERS,
        "reward": REWARD_MARKERS,
        "victory": VICTORY_MARKERS,
    }
    rows = ["label,text"]
    for label, markers in classes.items():
        for _ in range(50):
            words = []
            for _ in range(20):
                if rng.random() < 0.35:
                    words.append(rng.choice(markers))
                else:
                    words.append(rng.choice(filler))
            rows.append(f"{label},{' '.join(words)}")
    (OUT / "structure_demo.csv").write_text("\n".join(rows) + "\n")


def write_config():
    config = {
        "lexicon_path": "data/vad_lexicon.csv",
        "dimension": "arousal",
        "window_size": 500,
        "context": 10,
        "stop_list_path": "data/stopwords.txt",
        "band_delta": 0.0,
        "smooth_w": 5,
        "lowpass_m": 5,
        "resample_L": 100,
        "output_dir": "out",
        "manifest_path": "data/manifest.csv",
    }
    (OUT / "config.example.json").write_text(json.dumps(config, indent=2) + "\n")


def main():
    OUT.mkdir(exist_ok=True)
    rng = random.Random(SEED)
    lexicon = build_lexicon(rng)
    write_stopwords()
    n = build_corpus(rng, lexicon)
    build_structure_demo(rng)
    write_config()
    print(f"lexicon: {len(lexicon)} words, main story: {n} words")


if __name__ == "__main__":
    main()
