#!/usr/bin/env python3
"""Regenerates the bundled resources under data/.

Everything written here is deterministic: fixed seeds, sorted outputs.
The word-frequency table is counted from English prose found in locally
installed open-source documentation (module docstrings), since no corpus
download is assumed. Replace any of these files via the CLI flags if you
have better resources (e.g. a real GloVe table).
"""

import ast
import hashlib
import json
import math
import random
import re
import sys
from collections import Counter
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "data"
DEMO = DATA / "demo"

WORD_RE = re.compile(r"[a-z][a-z']*")

# ---------------------------------------------------------------------------
# Word frequency table
# ---------------------------------------------------------------------------

DOC_ROOTS = [
    "/usr/local/lib/python3.10/dist-packages/sklearn",
    "/usr/local/lib/python3.10/dist-packages/scipy",
    "/usr/local/lib/python3.10/dist-packages/numpy",
    "/usr/local/lib/python3.10/dist-packages/pandas",
    "/usr/local/lib/python3.10/dist-packages/matplotlib",
    "/usr/local/lib/python3.10/dist-packages/statsmodels",
    "/usr/local/lib/python3.10/dist-packages/sympy",
    "/usr/local/lib/python3.10/dist-packages/networkx",
    "/usr/local/lib/python3.10/dist-packages/sqlalchemy",
    "/usr/local/lib/python3.10/dist-packages/skimage",
    "/usr/local/lib/python3.10/dist-packages/seaborn",
    "/usr/local/lib/python3.10/dist-packages/plotly",
    "/usr/local/lib/python3.10/dist-packages/IPython",
    "/usr/local/lib/python3.10/dist-packages/torch",
    "/usr/lib/python3.10",
]


def iter_docstrings(py_file: Path):
    try:
        tree = ast.parse(py_file.read_text(encoding="utf-8", errors="ignore"))
    except (SyntaxError, ValueError):
        return
    for node in ast.walk(tree):
        if isinstance(node, (ast.Module, ast.ClassDef, ast.FunctionDef,
                             ast.AsyncFunctionDef)):
            doc = ast.get_docstring(node)
            if doc:
                yield doc


def count_words() -> Counter:
    counts = Counter()
    for root in DOC_ROOTS:
        root_path = Path(root)
        if not root_path.exists():
            continue
        for py_file in sorted(root_path.rglob("*.py")):
            if "test" in py_file.name:
                continue
            for doc in iter_docstrings(py_file):
                counts.update(WORD_RE.findall(doc.lower()))
    return counts


def write_frequency_table(path: Path, top_n: int = 50000) -> list:
    counts = count_words()
    for word in list(counts):
        if len(word) > 24 or (len(word) == 1 and word not in ("a", "i")):
            del counts[word]
        elif word.startswith("'") or word.endswith("'"):
            del counts[word]
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))[:top_n]
    with path.open("w", encoding="utf-8") as f:
        f.write("# token<TAB>count, counted over locally available English prose\n")
        for word, count in ranked:
            f.write(f"{word}\t{count}\n")
    print(f"frequency table: {len(ranked)} words, total {sum(c for _, c in ranked)}")
    return [w for w, _ in ranked]


# ---------------------------------------------------------------------------
# Empathy lexicon: 15 content words for each of 32 emotion categories
# ---------------------------------------------------------------------------

EMPATHY = {
    "afraid": "afraid fear scared scary frightened terrifying nervous worried alone panic shaking dread creepy unsafe fearful",
    "angry": "angry anger mad furious yelled unfair rage shouting slammed argument temper frustrated upset fuming fight",
    "annoyed": "annoying annoyed irritated bothered loud constantly interrupted noisy complain nuisance irritating bugging pestering grumpy whining",
    "anticipating": "anticipating awaiting upcoming soon countdown excitedly expecting eager planned arrival waiting anticipation forward prospect looming",
    "anxious": "anxious anxiety nervous worry stressed overthinking restless uneasy jittery deadline tense sweating dreading fretting edgy",
    "apprehensive": "apprehensive hesitant unsure wary doubtful cautious reluctant risky uncertain skeptical leery timid unease qualms second",
    "ashamed": "ashamed shame embarrassed guilty regret apologize hide blushed humiliated mistake sorry disgrace remorse awkward foolish",
    "caring": "caring care comfort support gentle kindness tended nursed helping warm soothe protect devoted attentive compassion",
    "confident": "confident confidence sure certain ready capable strong prepared nailed believe assured poised skilled determined unstoppable",
    "content": "content satisfied peaceful calm relaxed cozy comfortable enough serene pleasant quiet settled fulfilled ease mellow",
    "devastated": "devastated heartbroken crushed destroyed loss funeral died tragic shattered grief unbearable wrecked devastating mourning ruined",
    "disappointed": "disappointed disappointment letdown expected failed missed bummed unfortunately hopes cancelled worse underwhelmed dismayed disheartened shortfall",
    "disgusted": "disgusted disgusting gross nasty vomit filthy revolting smell rotten sickening repulsive yuck foul nauseating vile",
    "embarrassed": "embarrassed embarrassing blush awkward tripped cringe mortified stumbled spilled humiliating clumsy giggled flustered sheepish oops",
    "excited": "excited exciting excitement thrilled pumped stoked celebrate awesome amazing eager hyped ecstatic elated overjoyed yay",
    "faithful": "faithful loyal devoted committed trust promise forever vows steadfast reliable dependable true fidelity dedicated unwavering",
    "furious": "furious fury livid outraged enraged screaming seething betrayed irate boiling explosive wrath raging incensed storming",
    "grateful": "grateful gratitude thankful thanks blessed appreciate appreciation generous kindness fortunate thank indebted touched humbled appreciated",
    "guilty": "guilty guilt fault blame lied cheated confess conscience wronged apology forgive culpable remorseful regretted misdeed",
    "hopeful": "hopeful hope hopefully optimistic wish dream someday future believe faith brighter promising aspire chance optimism",
    "impressed": "impressed impressive wow incredible skill talented remarkable amazed astonishing masterful brilliant stunning admirable awe outstanding",
    "jealous": "jealous jealousy envy envious covet resent unfair luckier richer flaunting grudge spite comparing envying begrudge",
    "joyful": "joyful joy happy happiness delighted cheerful laughter smiling gleeful merry bliss jubilant radiant sunshine festive",
    "lonely": "lonely loneliness alone isolated solitude empty nobody missing distant abandoned friendless homesick withdrawn solitary longing",
    "nostalgic": "nostalgic nostalgia childhood memories remember reminisce old past vintage grandma hometown throwback memory fondly yesteryear",
    "prepared": "prepared preparation ready organized packed checklist studied plan planned rehearsed stocked equipped arranged practiced provisioned",
    "proud": "proud pride accomplished achievement graduated earned milestone succeeded honored triumph bragging victorious accomplishment achieved beaming",
    "sad": "sad sadness unhappy crying tears blue down miserable sorrow gloomy weeping heartache dejected glum somber",
    "sentimental": "sentimental sentiment keepsake treasured heirloom cherished meaningful memento touching heartfelt attachment precious dearly moving tender",
    "surprised": "surprised surprise unexpected shocked sudden twist startled stunned disbelief gasped astonished speechless blindsided unanticipated whoa",
    "terrified": "terrified terror horrified nightmare screamed horror petrified trembling chased haunted paralyzed shriek monstrous chilling panicked",
    "trusting": "trusting trustworthy honest believing relied confide openness sincere genuine transparent assurance goodwill secret entrusted candid",
}


def write_empathy(path: Path) -> set:
    raw = []
    for cat in sorted(EMPATHY):
        words = EMPATHY[cat].split()
        assert len(words) == 15, f"{cat}: {len(words)} words"
        raw.extend(words)
    unique = sorted(set(raw))
    with path.open("w", encoding="utf-8") as f:
        f.write(f"# empathy lexicon: {len(raw)} raw entries "
                f"(15 content words x {len(EMPATHY)} emotion categories), "
                f"{len(unique)} unique after dedupe\n")
        for w in unique:
            f.write(w + "\n")
    print(f"empathy lexicon: {len(raw)} raw, {len(unique)} unique")
    return set(unique)


# ---------------------------------------------------------------------------
# Sentiment lexicon (rule-augmented, VADER-style valences in [-4, 4])
# ---------------------------------------------------------------------------

POLARITY = {
    # positive
    "good": 1.9, "great": 3.1, "awesome": 3.1, "amazing": 2.8, "excellent": 3.2,
    "love": 3.2, "loved": 2.9, "loving": 2.9, "like": 1.5, "liked": 1.6,
    "likes": 1.6, "enjoy": 2.2, "enjoyed": 2.3, "enjoyable": 2.2, "fun": 2.3,
    "happy": 2.7, "glad": 2.0, "pleased": 1.9, "pleasant": 2.3, "nice": 1.8,
    "wonderful": 2.7, "fantastic": 2.6, "perfect": 2.7, "best": 3.2,
    "better": 1.9, "helpful": 1.9, "helped": 1.6, "helps": 1.5, "smooth": 1.3,
    "easy": 1.9, "easier": 1.6, "friendly": 2.2, "friend": 2.2, "kind": 2.4,
    "polite": 1.9, "smart": 1.7, "clever": 1.9, "cool": 1.3, "impressive": 2.3,
    "impressed": 2.1, "satisfying": 1.9, "satisfied": 1.7, "satisfy": 1.5,
    "comfortable": 1.7, "comforting": 1.9, "clear": 1.2, "engaging": 1.8,
    "interesting": 1.7, "interested": 1.6, "thanks": 1.9, "thank": 1.9,
    "thankful": 2.3, "grateful": 2.5, "appreciate": 2.0, "appreciated": 2.2,
    "trust": 1.8, "trusted": 2.0, "trustworthy": 2.5, "honest": 2.3,
    "reliable": 1.9, "responsive": 1.5, "quick": 1.0, "fast": 1.1,
    "delightful": 2.9, "delighted": 2.8, "charming": 2.2, "warm": 1.6,
    "caring": 2.4, "empathetic": 2.1, "supportive": 2.1, "natural": 1.2,
    "positive": 1.9, "recommend": 1.6, "recommended": 1.6, "useful": 1.8,
    "intuitive": 1.6, "super": 2.0, "fine": 0.8, "okay": 0.9, "ok": 0.9,
    "alright": 1.0, "decent": 1.1, "solid": 1.3, "works": 0.9, "worked": 0.9,
    "beautiful": 2.9, "brilliant": 2.8, "fabulous": 2.5, "superb": 3.0,
    "outstanding": 3.0, "remarkable": 2.2, "pleasure": 2.6, "joy": 2.9,
    "smiled": 1.8, "smile": 1.8, "laugh": 1.9, "laughed": 1.8, "win": 2.4,
    "winner": 2.4, "success": 2.3, "successful": 2.4, "effective": 1.8,
    "efficient": 1.7, "professional": 1.4, "human": 0.7, "personable": 1.8,
    "welcoming": 2.0, "thoughtful": 2.2, "attentive": 1.7, "respectful": 2.0,
    # negative
    "bad": -2.5, "terrible": -3.1, "awful": -2.9, "horrible": -2.9,
    "worst": -3.1, "worse": -2.1, "poor": -2.1, "hate": -2.7, "hated": -2.8,
    "dislike": -1.9, "disliked": -1.9, "annoying": -1.9, "annoyed": -1.8,
    "annoy": -1.7, "irritating": -2.1, "irritated": -1.9, "frustrating": -2.1,
    "frustrated": -2.0, "frustrate": -1.9, "boring": -1.3, "bored": -1.2,
    "bore": -1.1, "dull": -1.4, "slow": -1.0, "confusing": -1.5,
    "confused": -1.3, "confuse": -1.3, "unclear": -1.2, "awkward": -1.3,
    "weird": -0.7, "strange": -0.6, "creepy": -1.9, "scary": -1.8,
    "broken": -1.9, "bug": -1.4, "buggy": -1.9, "glitchy": -1.7, "crash": -1.8,
    "crashed": -1.8, "fail": -2.3, "failed": -2.3, "failure": -2.4,
    "useless": -2.2, "pointless": -1.9, "waste": -1.8, "wasted": -1.9,
    "repetitive": -1.3, "repeating": -1.0, "repeated": -0.9, "robotic": -1.1,
    "cold": -0.8, "rude": -2.3, "impolite": -1.9, "mean": -1.9,
    "offensive": -2.4, "insulting": -2.4, "dumb": -2.1, "stupid": -2.4,
    "idiot": -2.5, "ridiculous": -1.7, "nonsense": -1.7, "wrong": -1.6,
    "mistake": -1.4, "mistakes": -1.4, "error": -1.4, "errors": -1.5,
    "problem": -1.4, "problems": -1.5, "issue": -1.0, "issues": -1.1,
    "difficult": -1.4, "hard": -0.9, "complicated": -1.1, "tedious": -1.6,
    "uncomfortable": -1.5, "intrusive": -1.9, "invasive": -1.9, "nosy": -1.6,
    "suspicious": -1.4, "untrustworthy": -2.4, "distrust": -1.9,
    "dishonest": -2.3, "liar": -2.6, "lie": -1.8, "lied": -2.0, "lies": -1.9,
    "ignored": -1.6, "ignore": -1.4, "unhelpful": -1.8, "unresponsive": -1.6,
    "disappointing": -2.1, "disappointed": -2.0, "disappointment": -2.2,
    "sad": -2.1, "angry": -2.3, "mad": -2.2, "upset": -1.9, "unhappy": -2.0,
    "uneasy": -1.3, "nervous": -1.2, "anxious": -1.4, "worried": -1.4,
    "impersonal": -1.2, "generic": -0.8, "spam": -1.9, "scam": -2.6,
    "privacy": -0.3, "pushy": -1.6, "forced": -1.2, "limited": -0.9,
    "shallow": -1.2, "vague": -1.0, "sucks": -2.3, "suck": -2.2,
    "meh": -0.6, "bland": -1.0, "disaster": -2.7, "nightmare": -2.6,
    "painful": -2.0, "pain": -1.7, "cringe": -1.4, "pathetic": -2.4,
}

BOOSTERS = {
    "absolutely": 0.293, "amazingly": 0.293, "completely": 0.293,
    "considerably": 0.293, "decidedly": 0.293, "deeply": 0.293,
    "enormously": 0.293, "entirely": 0.293, "especially": 0.293,
    "exceptionally": 0.293, "extremely": 0.293, "greatly": 0.293,
    "highly": 0.293, "hugely": 0.293, "incredibly": 0.293, "intensely": 0.293,
    "majorly": 0.293, "particularly": 0.293, "purely": 0.293, "quite": 0.293,
    "really": 0.293, "remarkably": 0.293, "so": 0.293, "substantially": 0.293,
    "thoroughly": 0.293, "totally": 0.293, "tremendously": 0.293,
    "unbelievably": 0.293, "unusually": 0.293, "utterly": 0.293, "very": 0.293,
    "super": 0.293,
    "almost": -0.293, "kinda": -0.293, "less": -0.293, "little": -0.293,
    "marginally": -0.293, "occasionally": -0.293, "partly": -0.293,
    "slightly": -0.293, "somewhat": -0.293, "sorta": -0.293, "mostly": -0.150,
    "fairly": -0.150, "pretty": 0.293,
}

NEGATIONS = [
    "not", "no", "never", "none", "nobody", "nothing", "neither", "nor",
    "nowhere", "hardly", "scarcely", "barely", "rarely", "seldom", "without",
    "lack", "lacking", "lacks", "cannot", "isn't", "isnt", "aren't", "arent",
    "wasn't", "wasnt", "weren't", "werent", "don't", "dont", "doesn't",
    "doesnt", "didn't", "didnt", "can't", "cant", "couldn't", "couldnt",
    "shouldn't", "shouldnt", "won't", "wont", "wouldn't", "wouldnt", "ain't",
    "aint",
]


def write_sentiment(path: Path):
    # "super" appears as both polar word and booster; boosters only apply to
    # the token that follows, so keep the sets' keys disjoint by dropping the
    # booster duplicate.
    boosters = {k: v for k, v in BOOSTERS.items() if k not in POLARITY}
    overlap = set(boosters) & set(NEGATIONS)
    assert not overlap, overlap
    with path.open("w", encoding="utf-8") as f:
        f.write("# sentiment lexicon: token<TAB>valence\n")
        for token in sorted(POLARITY):
            f.write(f"{token}\t{POLARITY[token]}\n")
        f.write("#boosters\n")
        for token in sorted(boosters):
            f.write(f"{token}\t{boosters[token]}\n")
        f.write("#negations\n")
        for token in NEGATIONS:
            f.write(token + "\n")
    print(f"sentiment lexicon: {len(POLARITY)} polar, {len(boosters)} boosters, "
          f"{len(NEGATIONS)} negations")


# ---------------------------------------------------------------------------
# Offensive-terms lexicon
# ---------------------------------------------------------------------------

OFFENSIVE = [
    "arse", "arsehole", "ass", "asses", "asshat", "asshole", "assholes",
    "bastard", "bastards", "bitch", "bitches", "bloody hell", "bollocks",
    "bullshit", "crap", "cunt", "damn", "damned", "dick", "dickhead",
    "dipshit", "douche", "douchebag", "dumb as rocks", "dumbass", "dummy",
    "effing", "fck", "freaking idiot", "fuck", "fucked", "fucker", "fucking",
    "garbage human", "go to hell", "goddamn", "half wit", "halfwit",
    "hate you", "idiot", "idiotic", "idiots", "imbecile", "jackass", "jerk",
    "loser", "losers", "moron", "moronic", "morons", "nitwit", "numbskull",
    "piss off", "pissed", "prick", "scum", "scumbag", "shit", "shithead",
    "shitty", "shut up", "shut your mouth", "slut", "screw you", "stfu",
    "stupid", "stupidest", "trash talk", "twat", "wanker", "whore",
    "worthless", "you suck",
]


def write_offensive(path: Path):
    with path.open("w", encoding="utf-8") as f:
        f.write("# offensive terms and phrases, one per line (matched on the "
                "shared tokenizer's output)\n")
        for term in sorted(OFFENSIVE):
            f.write(term + "\n")
    print(f"offensive lexicon: {len(OFFENSIVE)} entries")


# ---------------------------------------------------------------------------
# PII detectors
# ---------------------------------------------------------------------------

PII = [
    {"name": "us_social_security_number",
     "regex": r"\b\d{3}-\d{2}-\d{4}\b"},
    {"name": "email_address",
     "regex": r"[A-Za-z0-9._%+-]+@[A-Za-z0-9.-]+\.[A-Za-z]{2,}"},
    {"name": "us_phone_number",
     "regex": r"\b\(?\d{3}\)?[-. ]\d{3}[-. ]\d{4}\b"},
    {"name": "credit_card_number",
     "regex": r"\b\d(?:[- ]?\d){12,18}\b",
     "checksum": "luhn"},
]


def write_pii(path: Path):
    path.write_text(json.dumps(PII, indent=2) + "\n", encoding="utf-8")
    print(f"pii detectors: {len(PII)}")


# ---------------------------------------------------------------------------
# Guideline catalog
# ---------------------------------------------------------------------------

GUIDELINES = [
    ("G01", "Add polite probings and explanations to the question",
     ["informativeness", "completion_rate"]),
    ("G02", "Add customizations to show the chatbot is actively listening",
     ["informativeness", "engagement_duration"]),
    ("G03", "Set a minimum response length to handle short user input",
     ["response_length", "engagement_duration"]),
    ("G04", "Add customized chatbot responses to handle user digressions",
     ["response_length", "engagement_duration", "repetition_rate"]),
    ("G05", "Reword the question to make it more acceptable to users",
     ["completion_rate", "repetition_rate"]),
    ("G06", "Personalize the chat experience, e.g., addressing users their names",
     ["completion_rate"]),
    ("G07", "Add default empathetic chatbot responses to handle unknown user input",
     ["empathy_level"]),
    ("G08", "Customize chatbot responses to give empathetic feedback on user input",
     ["empathy_level"]),
    ("G09", "Remove all the hate or offensive speech",
     ["hate_speech_rate"]),
    ("G10", "Avoid asking private or sensitive information without user consent",
     ["privacy_intrusion_rate"]),
]


def write_guidelines(path: Path):
    entries = [{"id": gid, "text": text, "metrics": metrics}
               for gid, text, metrics in GUIDELINES]
    path.write_text(json.dumps(entries, indent=2) + "\n", encoding="utf-8")
    print(f"guideline catalog: {len(entries)}")


# ---------------------------------------------------------------------------
# Demo corpus
# ---------------------------------------------------------------------------

QUESTIONS = [
    (1, "How are you feeling today?"),
    (2, "Where are you located?"),
    (3, "What do you do outside work?"),
    (4, "What are the challenges you currently face?"),
    (5, "What do you think you can do to help w/ this pandemic?"),
    (6, "How satisfied are you with this interview experience, on a scale of 1 to 5?"),
    (7, "How much do you trust this chatbot, on a scale of 1 to 5?"),
]

Q1_ANSWERS = [
    "i'm feeling pretty good today, just a bit tired after a long week of work",
    "honestly a little stressed with everything going on but hanging in there",
    "doing well, thanks for asking, the weather has been lovely around here",
    "feeling okay, somewhat bored of staying inside the house all the time",
    "i feel great, i went for a morning run and made a proper breakfast",
    "a bit anxious about the news lately but otherwise i am doing alright",
    "tired mostly, my kids keep me awake, but in a good mood overall",
    "pretty relaxed today since i finally finished a big project yesterday",
]

Q2_ANSWERS = [
    "i live in denver colorado", "near seattle in washington state",
    "a small town outside boston", "i'm in toronto canada",
    "portland oregon at the moment", "right now in austin texas",
    "chicago, the north side", "somewhere in rural ohio",
]

Q2_EVASIONS = [
    "why do you want to know that", "you first", "nope",
    "rather not say", "that's a bit personal", "hmm, guess",
]

Q2_PII = [
    "i'm in denver, call me at 555-123-4567 if you need details",
    "boston area, my email is sam.demo@example.com by the way",
]

Q3_ANSWERS = [
    "mostly reading and gardening", "i play guitar and cook",
    "hiking with my dog", "video games honestly",
    "volunteering at the shelter", "painting and long walks",
    "not much", "nothing really", "sleep", "watch shows",
]

Q4_ANSWERS = [
    "working from home while homeschooling two kids is exhausting and the days blur together",
    "i was furloughed last month so money is tight and finding work feels impossible right now",
    "mostly the isolation, i miss seeing my coworkers and my parents who live across the country",
    "my small business lost most of its customers and i am worried about paying the rent",
    "balancing caregiving for my mother with a full time job has been really hard lately",
    "staying motivated, everything feels uncertain and it is hard to plan anything ahead",
    "it's hard to say",
    "too many to list",
]

Q5_ANSWERS = [
    "stay home and wear a mask", "donate to the food bank",
    "check on elderly neighbors", "keep my distance and wash hands",
    "sew masks for the clinic", "support local restaurants with takeout",
    "get tested and isolate", "share only verified information online",
]

RATIONALE_POSITIVE = [
    "it was friendly and easy to talk to",
    "the questions were clear and the chat felt natural",
    "i liked how quick and polite it was",
    "surprisingly pleasant, it listened and responded well",
    "really smooth experience, better than most surveys",
]

RATIONALE_NEUTRAL = [
    "it was fine i guess",
    "an average chat, nothing special either way",
    "it did the job",
    "some questions felt generic but it was okay",
]

RATIONALE_NEGATIVE = [
    "it kept repeating the same question which was annoying",
    "asking where i live felt a bit intrusive",
    "the conversation felt robotic and cold at times",
    "it ignored what i typed and moved on, frustrating",
]

EMPATHY_REPLIES = [
    "i am sorry to hear that, it sounds really hard. thank you for sharing.",
    "that sounds difficult, i appreciate you telling me about it.",
    "thank you, i understand that must be stressful.",
]

NEUTRAL_ACKS = [
    "thanks for sharing.", "got it, thanks.", "i see, thank you.",
    "understood, thanks.",
]


def build_demo(rng: random.Random, n_sessions: int = 60):
    sessions = []
    base_time = 1588582800.0  # fixed origin so reruns are identical
    for i in range(n_sessions):
        sid = f"s{i+1:03d}"
        t = base_time + i * 600.0
        msgs = []

        def say(role, text_, gap_lo=4.0, gap_hi=30.0):
            nonlocal t
            t += rng.uniform(gap_lo, gap_hi)
            msgs.append({"role": role, "text": text_, "timestamp": round(t, 1)})

        # dropout plan: every session reaches Q1; later questions lose users
        reach = 5
        r = rng.random()
        if r < 0.08:
            reach = 1
        elif r < 0.16:
            reach = 2
        elif r < 0.28:
            reach = 3
        elif r < 0.38:
            reach = 4

        for qid, qtext in QUESTIONS[:5]:
            if qid > reach:
                break
            if qid == 1:
                say("bot", "Hi! I have a few questions about how things are "
                           "going.", 2.0, 6.0)
                say("bot", qtext, 1.0, 3.0)
                say("user", rng.choice(Q1_ANSWERS), 8.0, 45.0)
                say("bot", rng.choice(NEUTRAL_ACKS), 2.0, 5.0)
            elif qid == 2:
                asked = qtext if rng.random() < 0.7 else "Where you are located?"
                say("bot", asked, 2.0, 6.0)
                if rng.random() < 0.35:
                    say("user", rng.choice(Q2_EVASIONS), 5.0, 20.0)
                    say("bot", qtext, 2.0, 5.0)  # re-ask verbatim
                if rng.random() < 0.08:
                    say("user", rng.choice(Q2_PII), 6.0, 25.0)
                else:
                    say("user", rng.choice(Q2_ANSWERS), 6.0, 25.0)
            elif qid == 3:
                say("bot", qtext, 2.0, 6.0)
                say("user", rng.choice(Q3_ANSWERS), 5.0, 20.0)
            elif qid == 4:
                say("bot", qtext, 2.0, 6.0)
                say("user", rng.choice(Q4_ANSWERS), 15.0, 60.0)
                if rng.random() < 0.5:
                    say("bot", rng.choice(EMPATHY_REPLIES), 2.0, 6.0)
            else:
                say("bot", qtext, 2.0, 6.0)
                say("user", rng.choice(Q5_ANSWERS), 4.0, 12.0)

        completed = reach == 5 and rng.random() < 0.9
        if completed:
            say("bot", QUESTIONS[5][1], 2.0, 6.0)
            sat = rng.choices([5, 4, 3, 2], weights=[30, 38, 22, 10])[0]
            say("user", rng.choice([str(sat), f"i'd say {sat}", f"{sat} out of 5"]),
                4.0, 15.0)
            say("bot", "Thanks! And why is that?", 2.0, 5.0)
            pool = (RATIONALE_POSITIVE if sat >= 4 else
                    RATIONALE_NEUTRAL if sat == 3 else RATIONALE_NEGATIVE)
            say("user", rng.choice(pool), 8.0, 30.0)
            say("bot", QUESTIONS[6][1], 2.0, 5.0)
            tr = max(1, min(5, sat + rng.choice([-1, 0, 0, 1])))
            say("user", str(tr), 4.0, 15.0)

        sessions.append({"session_id": sid, "messages": msgs})
    return sessions


def write_demo(rng: random.Random):
    DEMO.mkdir(parents=True, exist_ok=True)
    sessions = build_demo(rng)
    with (DEMO / "transcripts.jsonl").open("w", encoding="utf-8") as f:
        for s in sessions:
            f.write(json.dumps(s, sort_keys=True) + "\n")
    config = {
        "questions": [{"question_id": qid, "canonical_text": text}
                      for qid, text in QUESTIONS],
        "rating_question_ids": [6, 7],
        "fuzzy_match_threshold": 0.8,
        "max_evidence_per_suggestion": 2,
        "rng_seed": 0,
    }
    (DEMO / "interview.json").write_text(json.dumps(config, indent=2) + "\n",
                                         encoding="utf-8")
    print(f"demo corpus: {len(sessions)} sessions")
    return sessions


# ---------------------------------------------------------------------------
# Embedding table: deterministic hash-seeded vectors. Mean pooling over such
# vectors preserves bag-of-words overlap, which is all the evidence
# clustering needs from the default table.
# ---------------------------------------------------------------------------

def word_vector(word: str, dim: int = 50):
    digest = hashlib.blake2b(word.encode("utf-8"), digest_size=8).digest()
    r = random.Random(int.from_bytes(digest, "big"))
    vec = [r.gauss(0.0, 1.0) for _ in range(dim)]
    norm = math.sqrt(sum(x * x for x in vec)) or 1.0
    return [x / norm for x in vec]


def write_embeddings(path: Path, freq_words: list, sessions, dim: int = 50):
    vocab = set(freq_words[:4000])
    token_re = re.compile(r"[a-z0-9][a-z0-9']*")
    for s in sessions:
        for m in s["messages"]:
            vocab.update(token_re.findall(m["text"].lower()))
    for _, qtext in QUESTIONS:
        vocab.update(token_re.findall(qtext.lower()))
    ranked = sorted(vocab)
    with path.open("w", encoding="utf-8") as f:
        for word in ranked:
            vec = word_vector(word, dim)
            f.write(word + " " + " ".join(f"{x:.4f}" for x in vec) + "\n")
    print(f"embeddings: {len(ranked)} words, dim {dim}")


def main():
    DATA.mkdir(parents=True, exist_ok=True)
    rng = random.Random(42)
    freq_words = write_frequency_table(DATA / "frequency.tsv")
    write_empathy(DATA / "empathy.txt")
    write_sentiment(DATA / "sentiment.tsv")
    write_offensive(DATA / "offensive.txt")
    write_pii(DATA / "pii.json")
    write_guidelines(DATA / "guidelines.json")
    sessions = write_demo(rng)
    write_embeddings(DATA / "embeddings.txt", freq_words, sessions)
    return 0


if __name__ == "__main__":
    sys.exit(main())
