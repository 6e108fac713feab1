"""Generate the bundled synthetic opinion corpus, synset graph and sample
lexicons under src/subopinion/data/.

    python scripts/make_synthetic_corpus.py [--seed 7]

Each thread is an opinion question with 6-9 answers. Answers talk about a
few aspects of the question, each aspect with its own nouns and facts, in a
stance (positive / negative) drawn per author. The answer covering the most
aspects is marked best.
"""

import argparse
import json
import random
from pathlib import Path

DATA = Path(__file__).resolve().parents[1] / "src" / "subopinion" / "data"

POS_ADJ = ["good", "great", "excellent", "nice", "wonderful", "amazing", "helpful", "reliable", "pleasant", "comfortable"]
NEG_ADJ = ["bad", "poor", "terrible", "awful", "expensive", "annoying", "unreliable", "stressful", "boring", "painful"]
ADJ_SYNONYMS = [
    ["good", "great", "excellent", "nice"],
    ["wonderful", "amazing", "great"],
    ["helpful", "reliable", "good"],
    ["pleasant", "comfortable", "nice"],
    ["bad", "poor", "terrible", "awful"],
    ["annoying", "stressful", "painful", "bad"],
    ["unreliable", "poor"],
    ["boring", "awful"],
    ["expensive", "costly"],
]

# thread id -> (category, query, hub word, {aspect: (nouns, facts)})
THREADS = {
    "ev": ("cars", "Is it worth buying an electric car?", "car", {
        "price": (["price", "cost", "expense"], ["Electric models still cost more up front than petrol cars", "Tax credits can cut the sticker price by a few thousand dollars"]),
        "battery": (["battery", "range", "charge"], ["Most batteries now manage about three hundred miles per charge", "Cold winters noticeably reduce the driving range"]),
        "charging": (["charging", "station", "charger"], ["Public charging stations are still rare in rural areas", "A home charger lets you fill up overnight"]),
        "maintenance": (["maintenance", "repair", "service"], ["There is no oil to change and brakes wear slowly", "Battery replacement outside warranty can be very costly"]),
        "environment": (["environment", "emissions", "pollution"], ["Driving electric removes tailpipe emissions in cities", "The grid mix decides how clean the electricity really is"]),
    }),
    "wfh": ("work", "What do you think about working from home?", "work", {
        "commute": (["commute", "travel", "traffic"], ["Skipping the commute saves me two hours every day", "No traffic means I start work less tired"]),
        "productivity": (["productivity", "focus", "output"], ["Deep work is easier without office interruptions", "Some people lose focus without a manager nearby"]),
        "isolation": (["isolation", "loneliness", "contact"], ["Weeks without seeing colleagues can feel isolating", "Video calls only partly replace real contact"]),
        "schedule": (["schedule", "flexibility", "hours"], ["A flexible schedule lets parents pick up their kids", "Work hours tend to creep into the evening"]),
        "office": (["office", "desk", "workspace"], ["A proper desk and chair matter for your back", "Small apartments rarely have room for an office"]),
    }),
    "pet": ("pets", "Should I get a cat or a dog?", "pet", {
        "exercise": (["walks", "exercise", "activity"], ["Dogs need walks twice a day in any weather", "Cats exercise themselves around the house"]),
        "cost": (["food", "vet", "bills"], ["Large dogs eat a lot and vet bills add up", "Cats are usually cheaper to feed"]),
        "noise": (["barking", "noise", "neighbors"], ["Barking can upset neighbors in an apartment", "Cats are quiet most of the time"]),
        "affection": (["affection", "companionship", "loyalty"], ["Dogs greet you at the door every evening", "Cats show affection on their own terms"]),
        "cleaning": (["fur", "litter", "cleaning"], ["Shedding fur gets onto every sofa and shirt", "A litter box needs cleaning every single day"]),
    }),
    "online": ("education", "Is online learning better than classroom teaching?", "learning", {
        "flexibility": (["pace", "flexibility", "timing"], ["You can replay a lecture as often as you need", "Studying at your own pace suits working adults"]),
        "interaction": (["interaction", "discussion", "teacher"], ["Asking a teacher questions live is hard online", "Classroom discussion sparks ideas you miss at home"]),
        "discipline": (["discipline", "motivation", "deadlines"], ["Without fixed classes many students procrastinate", "Strict deadlines keep online courses on track"]),
        "cost": (["tuition", "fees", "cost"], ["Online courses often charge lower tuition", "You save on rent and transport when studying online"]),
        "technology": (["internet", "laptop", "technology"], ["A slow internet connection ruins live sessions", "Not every family can afford a laptop per child"]),
    }),
    "piracy": ("media", "What is the long term effect of piracy on the music industry?", "music", {
        "profit": (["profit", "revenue", "sales"], ["Album sales fell sharply after file sharing took off", "Labels now earn more from streaming than from discs"]),
        "artists": (["artists", "musicians", "bands"], ["Small bands lose income they badly need", "Some musicians gain fans through free downloads"]),
        "quality": (["quality", "creativity", "risk"], ["Labels take fewer chances on new styles", "Mainstream music becomes more formulaic"]),
        "business": (["business", "model", "streaming"], ["Piracy forced the industry to rework its business model", "Streaming services grew out of the piracy era"]),
        "law": (["law", "lawsuits", "copyright"], ["Copyright lawsuits against fans hurt the industry image", "Enforcing the law online is nearly impossible"]),
    }),
    "phones": ("tech", "Are smartphones bad for teenagers?", "phone", {
        "sleep": (["sleep", "bedtime", "night"], ["Screens at night delay sleep for many teens", "Phones in the bedroom lead to late bedtime"]),
        "social": (["friends", "social", "media"], ["Social media keeps teens in touch with friends", "Online comparison can hurt self esteem"]),
        "safety": (["safety", "location", "emergency"], ["Parents can reach their kids in an emergency", "Location sharing gives families peace of mind"]),
        "school": (["homework", "grades", "school"], ["Phones distract students during homework", "Educational apps can help with school work"]),
        "addiction": (["addiction", "screen", "habit"], ["Endless scrolling becomes a hard habit to break", "Screen time limits help control addiction"]),
    }),
    "city": ("lifestyle", "Is living in a big city better than the countryside?", "city", {
        "jobs": (["jobs", "career", "salary"], ["Cities offer far more jobs and higher salary", "Remote work makes rural careers more realistic"]),
        "rent": (["rent", "housing", "apartment"], ["City rent eats half of a typical paycheck", "In the countryside a house costs less than a flat"]),
        "nature": (["nature", "air", "quiet"], ["Fresh air and quiet nights are hard to beat", "Parks in the city are crowded on weekends"]),
        "culture": (["culture", "restaurants", "museums"], ["Museums and restaurants are a short walk away", "Small towns have few cultural events"]),
        "transport": (["transport", "bus", "trains"], ["Good trains mean you do not need a car", "Rural bus service is slow and infrequent"]),
    }),
    "veg": ("health", "Should I switch to a vegetarian diet?", "diet", {
        "health": (["health", "cholesterol", "heart"], ["Cutting red meat can lower cholesterol", "Vegetarians tend to have healthier hearts"]),
        "protein": (["protein", "iron", "nutrients"], ["Beans and lentils provide plenty of protein", "Iron and vitamin intake needs some planning"]),
        "taste": (["taste", "flavor", "cooking"], ["Learning new recipes makes cooking fun", "Some people miss the flavor of meat"]),
        "cost": (["groceries", "budget", "cost"], ["Lentils and rice are very cheap groceries", "Meat substitutes can strain the budget"]),
        "ethics": (["animals", "ethics", "climate"], ["Eating less meat reduces harm to animals", "Livestock farming drives climate change"]),
    }),
    "house": ("finance", "Is it a good idea to buy a house now?", "house", {
        "rates": (["rates", "mortgage", "interest"], ["Mortgage rates are higher than a few years ago", "Locking a fixed rate protects against rises"]),
        "prices": (["prices", "market", "value"], ["House prices in many regions are near record highs", "Property value tends to grow over decades"]),
        "renting": (["renting", "landlord", "lease"], ["Renting keeps you flexible if you move for work", "A landlord can end your lease at short notice"]),
        "repairs": (["repairs", "roof", "upkeep"], ["A new roof can cost tens of thousands", "Owners pay for every repair themselves"]),
        "equity": (["equity", "savings", "investment"], ["Mortgage payments build equity over time", "A house ties up savings you might invest elsewhere"]),
    }),
    "games": ("tech", "Are video games good for kids?", "game", {
        "skills": (["skills", "reflexes", "puzzles"], ["Puzzle games train problem solving skills", "Fast games sharpen reflexes and coordination"]),
        "violence": (["violence", "aggression", "content"], ["Violent content worries many parents", "Studies find little link between games and aggression"]),
        "friends": (["friends", "teamwork", "online"], ["Playing online builds teamwork with friends", "Online chat exposes kids to strangers"]),
        "time": (["time", "homework", "outdoors"], ["Hours of gaming leave less time for homework", "Kids should still spend time outdoors"]),
        "money": (["money", "purchases", "price"], ["In game purchases drain pocket money quickly", "Many good games have a fair price"]),
    }),
}

POS_FRAMES = [
    "The {n} is really {a}.",
    "I think the {n} is {a} and {b}.",
    "Honestly the {n} has been {a} for me.",
    "In my experience the {n} was {a}.",
    "The {n} is not {x} at all.",
]
NEG_FRAMES = [
    "The {n} is really {a}.",
    "Sadly the {n} turned out {a}.",
    "I would say the {n} is {a} and {b}.",
    "The {n} was never {x} for us.",
]
OPENERS = [
    "Here is my take on this.",
    "I have thought about this a lot.",
    "Good question.",
    "It depends on your situation.",
    "My family went through the same decision.",
]


def make_thread(rng: random.Random, tid: str, spec) -> dict:
    category, query, _hub, aspects = spec
    names = list(aspects)
    n_answers = rng.randint(6, 9)
    authors = [f"{tid}_user{k}" for k in range(n_answers)]
    if n_answers > 6:
        authors[-1] = authors[1]  # one author posts twice
    answers = []
    for k in range(n_answers):
        lean = rng.random()
        chosen = rng.sample(names, rng.randint(2, 4))
        sents = [rng.choice(OPENERS)] if rng.random() < 0.5 else []
        for asp in chosen:
            nouns, facts = aspects[asp]
            positive = rng.random() < lean
            adjs, opp = (POS_ADJ, NEG_ADJ) if positive else (NEG_ADJ, POS_ADJ)
            frame = rng.choice(POS_FRAMES if positive else NEG_FRAMES)
            a, b = rng.sample(adjs, 2)
            sents.append(frame.format(n=rng.choice(nouns), a=a, b=b, x=rng.choice(opp)))
            sents.append(rng.choice(facts) + ".")
            if rng.random() < 0.35:
                sents.append(rng.choice(facts) + ".")
        answers.append({"author": authors[k], "text": " ".join(sents), "aspects": len(set(chosen))})
    best = max(range(n_answers), key=lambda i: (answers[i]["aspects"], len(answers[i]["text"]), -i))
    for i, a in enumerate(answers):
        a["is_best"] = i == best
        del a["aspects"]
    return {"id": tid, "query": query, "genre": "qa", "category": category, "answers": answers}


def synset_edges() -> list[tuple[str, str]]:
    edges = set()
    for group in ADJ_SYNONYMS:
        for a, b in zip(group, group[1:]):
            edges.add((a, b))
    edges.add(("good", "quality"))
    edges.add(("bad", "quality"))
    for _cat, _q, hub, aspects in THREADS.values():
        for nouns, _facts in aspects.values():
            for a, b in zip(nouns, nouns[1:]):
                edges.add((a, b))
            edges.add((nouns[0], hub))
    return sorted(tuple(sorted(e)) for e in edges)


LEXICON_A = {w: "pos" for w in POS_ADJ + ["love", "best", "better", "happy", "healthy", "fun", "fair", "fresh", "free", "cheap"]}
LEXICON_A.update({w: "neg" for w in NEG_ADJ + ["hate", "worse", "worst", "hurt", "lose", "rare", "slow", "costly", "miss", "worries"]})
LEXICON_B = {w: "pos" for w in ["good", "great", "wonderful", "love", "enjoy", "safe", "peace", "healthier", "easier", "gain"]}
LEXICON_B.update({w: "neg" for w in ["bad", "awful", "poor", "upset", "harm", "distract", "drain", "ruins", "strain", "cheap"]})
NEGATORS = ["not", "no", "never", "nothing", "nobody", "neither", "nor", "without", "hardly",
            "cannot", "isn", "wasn", "aren", "weren", "don", "doesn", "didn"]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    DATA.mkdir(parents=True, exist_ok=True)
    with open(DATA / "synthetic_threads.jsonl", "w", encoding="utf-8") as fh:
        for tid, spec in THREADS.items():
            fh.write(json.dumps(make_thread(rng, tid, spec)) + "\n")
    with open(DATA / "synsets.tsv", "w", encoding="utf-8") as fh:
        for a, b in synset_edges():
            fh.write(f"{a}\t{b}\n")
    lexdir = DATA / "lexicon"
    lexdir.mkdir(exist_ok=True)
    for name, table in (("sample_a.tsv", LEXICON_A), ("sample_b.tsv", LEXICON_B)):
        with open(lexdir / name, "w", encoding="utf-8") as fh:
            for w in sorted(table):
                fh.write(f"{w}\t{table[w]}\n")
    (lexdir / "negators.txt").write_text("\n".join(NEGATORS) + "\n", encoding="utf-8")
    print(f"wrote bundled data to {DATA}")


if __name__ == "__main__":
    main()
