"""Build the committed test corpora.

Writes tests/data/correct50.jsonl (all Correct, marker-bearing, used by the
augmentation round-trip) and tests/data/desk_corpus.jsonl (100 hand-labeled
records spanning the four question types plus augmented adversarial variants).

Run from the repo root:  python3 tools/build_fixtures.py
"""

from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from ajudge.augment import AugmentPlan, augment_corpus  # noqa: E402
from ajudge.evalharness import accuracy, evaluate, f1  # noqa: E402
from ajudge.judging import judge_record  # noqa: E402
from ajudge.records import LabeledRecord, QuestionType, Verdict, write_corpus  # noqa: E402

DATA = Path(__file__).resolve().parents[1] / "tests" / "data"

MC = QuestionType.MULTIPLE_CHOICE
MATH = QuestionType.MATH
SA = QuestionType.SHORT_ANSWER
CLF = QuestionType.CLASSIFICATION

C, I = "Correct", "Incorrect"


def rec(dataset, qtype, question, answer, output, label) -> LabeledRecord:
    return LabeledRecord(dataset=dataset, question=question, question_type=qtype,
                         correct_answer=answer, llm_output=output,
                         human_judgment_result=Verdict.from_string(label))


# ---------------------------------------------------------------------------
# correct50: marker-bearing records, all judged Correct by a human

MC_ITEMS = [
    ("Which animal is a mammal?", ["Snake", "Whale", "Trout", "Gecko"], 2),
    ("Which planet is largest?", ["Mars", "Venus", "Earth", "Jupiter"], 4),
    ("Which metal is liquid at room temperature?", ["Iron", "Mercury", "Gold", "Zinc"], 2),
    ("Which gas do plants absorb?", ["Oxygen", "Nitrogen", "Carbon dioxide", "Helium"], 3),
    ("Which number is prime?", ["Eight", "Nine", "Eleven", "Fifteen"], 3),
    ("Which instrument has strings?", ["Drum", "Violin", "Flute", "Trumpet"], 2),
    ("Which country is in South America?", ["Spain", "Egypt", "Brazil", "Japan"], 3),
    ("Which organ pumps blood?", ["Liver", "Heart", "Lung", "Kidney"], 2),
    ("Which color is on top of a rainbow?", ["Red", "Blue", "Green", "Violet"], 1),
    ("Which season follows winter?", ["Autumn", "Summer", "Spring", "Monsoon"], 3),
    ("Which shape has three sides?", ["Square", "Triangle", "Circle", "Pentagon"], 2),
    ("Which ocean is largest?", ["Atlantic", "Indian", "Arctic", "Pacific"], 4),
    ("Which language is spoken in Brazil?", ["Spanish", "Portuguese", "French", "Dutch"], 2),
    ("Which particle is negatively charged?", ["Proton", "Neutron", "Electron", "Photon"], 3),
    ("Which continent is coldest?", ["Africa", "Europe", "Antarctica", "Asia"], 3),
    ("Which sport uses a shuttlecock?", ["Tennis", "Badminton", "Squash", "Golf"], 2),
    ("Which star is closest to Earth?", ["Sirius", "Vega", "The Sun", "Polaris"], 3),
    ("Which bone protects the brain?", ["Femur", "Skull", "Rib", "Spine"], 2),
    ("Which fruit is a citrus?", ["Apple", "Banana", "Orange", "Grape"], 3),
    ("Which device measures temperature?", ["Barometer", "Thermometer", "Odometer", "Ammeter"], 2),
]

MATH_ITEMS = [
    ("What is 12 times 12?", "144"),
    ("A worker earns 15 dollars per hour for 8 hours. How much in total?", "120"),
    ("What is one half plus one quarter?", "3/4"),
    ("Compute 2 to the 10th power.", "1024"),
    ("What is 10% of 250?", "25"),
    ("A triangle has angles 90 and 45 degrees. What is the third angle in degrees?", "45"),
    ("What is the value of 7 factorial divided by 6 factorial?", "7"),
    ("Solve for x: 3x + 6 = 21.", "5"),
    ("What is the area of a 6 by 9 rectangle?", "54"),
    ("Convert 2 kilometers to meters.", "2000"),
    ("What is 1000 minus 88?", "912"),
    ("What is the average of 4, 8, and 12?", "8"),
    ("Express 0.75 as a fraction.", "3/4"),
    ("A car travels 180 miles in 3 hours. What is its speed in miles per hour?", "60"),
    ("What is the square root of 225?", "15"),
]

SA_ITEMS = [
    ("In which year did the Apollo 11 mission land on the Moon?", "1969"),
    ("What is the capital of France?", "Paris"),
    ("Which team won the Super Bowl LII?", "the Eagles"),
    ("How many stripes are on the flag of the United States?", "13"),
    ("What is the largest desert on Earth?", "Antarctica"),
    ("Who wrote Pride and Prejudice?", "Jane Austen"),
    ("What is the chemical symbol for gold?", "Au"),
    ("In which city is the Eiffel Tower located?", "Paris"),
    ("How many players are on a soccer team on the field?", "11"),
    ("What river flows through Cairo?", "the Nile"),
]

CLF_ITEMS = [
    ("This phone exceeded every expectation, battery lasts for days! "
     "Please identify the sentiment polarity of the sentence: positive or negative",
     "positive"),
    ("The plot was predictable and the acting was wooden. "
     "Please identify the sentiment polarity of the sentence: positive or negative",
     "negative"),
    ("Stocks rallied today as the central bank held rates steady. "
     "Classify the topic: business or sports", "business"),
    ("The striker scored twice in the final minutes of the derby. "
     "Classify the topic: business or sports", "sports"),
    ("Premise: all swans in the lake are white. Hypothesis: there is a black swan "
     "in the lake. Does the premise entail the hypothesis: yes or no", "no"),
]


def build_correct50() -> list[LabeledRecord]:
    out = []
    for idx, (stem, opts, answer_pos) in enumerate(MC_ITEMS):
        labels = [chr(ord("A") + i) for i in range(len(opts))]
        question = stem + "  " + "  ".join(f"{l}. {o}" for l, o in zip(labels, opts))
        label = labels[answer_pos - 1]
        # vary the response shape across records
        if idx % 4 == 0:
            output = f"Let me think through the options.\nThe answer is {label}. {opts[answer_pos - 1]}"
        elif idx % 4 == 1:
            output = f"Considering each choice carefully, the correct answer is {label}."
        elif idx % 4 == 2:
            output = f"The answer is {opts[answer_pos - 1]}."
        else:
            output = f"After elimination, the answer is {label}."
        out.append(rec("fixture-mc", MC, question, label, output, C))
    for idx, (question, answer) in enumerate(MATH_ITEMS):
        if idx % 3 == 0:
            output = f"Working through the arithmetic step by step. The answer is {answer}."
        elif idx % 3 == 1:
            output = f"We compute the result directly.\nThe answer is \\boxed{{{answer}}}."
        else:
            output = f"Carrying out the calculation gives the final answer is {answer}."
        out.append(rec("fixture-math", MATH, question, answer, output, C))
    for question, answer in SA_ITEMS:
        out.append(rec("fixture-sa", SA, question, answer,
                       f"Recalling the relevant fact. The answer is {answer}.", C))
    for question, answer in CLF_ITEMS:
        out.append(rec("fixture-clf", CLF, question, answer,
                       f"Reading the text closely. The answer is {answer}.", C))
    assert len(out) == 50
    return out


# ---------------------------------------------------------------------------
# desk corpus: 70 hand-labeled base records + 30 augmented variants


def build_desk_base() -> list[LabeledRecord]:
    mammal = "Which animal is a mammal?  A. Snake  B. Whale  C. Trout  D. Gecko"
    planets = "Which planet is largest?  A. Mars  B. Venus  C. Earth  D. Jupiter"
    romans = ("Which map would show the global distribution of coal?  "
              "(I) reference map.  (II) topographic map.  (III) thematic map.  "
              "(IV) location map.")
    arabics = "Pick the prime number.  1. 21  2. 33  3. 37  4. 49"
    records = [
        # --- multiple choice (18) ---
        rec("MMLU", MC, mammal, "B", "Whales nurse their young. The answer is B. Whale", C),
        rec("MMLU", MC, planets, "D", "Jupiter dwarfs the rest. The answer is D.", C),
        rec("MMLU-Redux_enh", MC, romans, "III",
            "A thematic map displays a variable over space. The answer is (III) thematic map.", C),
        rec("AGIEval", MC, arabics, "3", "Only 37 has no divisors. The answer is 3.", C),
        rec("MMLU", MC, planets, "D", "The answer is Jupiter.", C),
        rec("MMLU", MC, planets, "B",
            "The answer is B. Jupiter", I),  # label matches, content contradicts it
        rec("MMLU", MC, mammal, "B", "The answer is C.", I),
        rec("ARC", MC, mammal, "B", "My conclusion: \\boxed{B}", C),
        rec("ARC", MC, mammal, "B", "the answer is b.", C),
        rec("CMMLU", MC, "下列哪项是哺乳动物？  A. 蛇  B. 鲸鱼  C. 鳟鱼  D. 壁虎", "B",
            "鲸鱼是哺乳动物。答案是B。", C),
        rec("ARC", MC, planets, "D",
            "(A) is too small. (B) and (C) are rocky. (D) is correct because Jupiter is a gas giant.", C),
        rec("MMLU", MC, mammal, "B",
            "At first I suspected A, the snake. Actually snakes are reptiles. The answer is B.", C),
        rec("GPQA", MC, planets, "D",
            "Comparing radii: Mars 3390 km, Venus 6052 km, Earth 6371 km, Jupiter 69911 km.\n"
            "The largest radius belongs to Jupiter.\n\\boxed{D}", C),
        rec("MMLU", MC, planets, "D",
            "All options are planets, and each deserves a look before deciding. The answer is D.", C),
        rec("AGIEval", MC, arabics, "3", "The correct option is 3.", C),
        rec("ARC", MC, mammal, "B", "B", C),
        rec("MMLU", MC, mammal, "B", "The answer is E.", I),
        rec("CommonsenseQA", MC,
            "Where would you keep ice cream?  A. oven  B. freezer  C. pantry  D. garage",
            "B", "Ice cream melts unless frozen, so the answer is B. freezer.", C),
        # --- math (18) ---
        rec("GSM8K", MATH,
            "Daisy and Rose were enjoying their backyard pool with their dogs.  If there are "
            "24 legs/paws in the pool, how many dogs do Daisy and Rose have?", "5",
            "24 legs total. People contribute 4 legs, leaving 20 paws, so 20 / 4 = 5.\n"
            "The answer is 5.", C),
        rec("GSM8K", MATH, "If pencils cost 3 dollars each, how much do 4 pencils cost?", "12",
            "Each pencil is 3 dollars, so 4 pencils cost 4 * 3 = 10 dollars.\n"
            "Therefore, the pencils cost 10 dollars.", I),
        rec("MATH", MATH, "What is one half expressed as a decimal?", "1/2",
            "The answer is 0.5.", C),
        rec("MATH", MATH, "Simplify the fraction 6/8.", "\\frac{3}{4}",
            "Dividing numerator and denominator by 2: the answer is $0.75$.", C),
        rec("SVAMP", MATH,
            "A volcano shoots ash 300 feet up; the cloud spreads 18 times as far in diameter. "
            "What is the radius of the ash cloud in feet?", "2700",
            "Diameter is 18 * 300 = 5400 feet, so the radius is half. The answer is 2700 feet.", C),
        rec("SVAMP", MATH, "Convert 1 kilometer to meters.", "1000 m",
            "One kilometer equals exactly one thousand meters. The answer is 1 km.", C),
        rec("GSM8K", MATH,
            "A class has 40 students and 20 passed. What fraction passed, as a percent?", "0.5",
            "Half of the class passed. The answer is 50%.", C),
        rec("MATH", MATH, "What is half of pi?", "\\frac{\\pi}{2}",
            "Dividing by two gives the answer is pi/2.", C),
        rec("AIME", MATH, "Compute the radius described above.", "2700",
            "Scaling up: the answer is Two thousand seven hundred.", C),
        rec("MATH", MATH, "Expand (x+1)^2.", "x^2+2x+1",
            "Squaring the binomial, the answer is (x+1)^2.", C),
        rec("GSM8K", MATH, "What is 15 plus 4?", "19",
            "Adding them: 15 + 4 = 18. The answer is 18.", I),
        rec("GSM8K", MATH, "How many dogs are in the pool problem above?", "5",
            "There are 10 dogs at first glance... wait, people stand on two legs in the pool. "
            "Recomputing: (24 - 4) / 4 = 5. The answer is 5.", C),
        rec("MATH", MATH, "What is 6 times 7?", "42",
            "The answer is 42. Verification: 6 * 7 equals", C),  # truncated check ignored
        rec("MATH", MATH, "What is minus five plus zero?", "-5", "The answer is -5.", C),
        rec("GSM8K", MATH, "A stadium holds 12,000 people. How many is that?", "12000",
            "Reading off the capacity: the answer is 12,000.", C),
        rec("MATH", MATH, "What is 2^5?", "32", "Doubling five times: the answer is 2^5.", C),
        rec("LiveMathBench", MATH, "Express beta from the triangle relation.",
            "$\\frac{\\pi}{2} - 2\\alpha$",
            "Working through the identity, the answer is 0.5 * pi - 2 * alpha.", C),
        rec("GSM8K", MATH, "How many boxes fit (see above)?", "7",
            "I am not sure this can be determined from the problem.", I),
        # --- short answer (18) ---
        rec("SimpleQA", SA,
            "In which year did Fayaz A. Malik receive the Young Scientist of the Year award?",
            "2009", "That award came early in his career.\n\nThe answer is 2001.", I),
        rec("SimpleQA", SA, "In which year did the Apollo 11 mission land on the Moon?", "1969",
            "The answer is 1969.", C),
        rec("TriviaQA", SA, "Which team won Super Bowl LII?", "the Eagles",
            "Philadelphia beat New England that year. The answer is The Eagles.", C),
        rec("TriviaQA", SA, "What is the capital of Australia?", "Canberra",
            "Many assume Sydney, but the answer is Canberra.", C),
        rec("SimpleQA", SA, "How many stripes are on the US flag?", "13",
            "One for each original colony. The answer is thirteen.", C),
        rec("TriviaQA", SA, "Who wrote Pride and Prejudice?", "Jane Austen",
            "The answer is Jane Austen.", C),
        rec("SimpleQA", SA, "What is the chemical symbol for gold?", "Au",
            "From the Latin aurum. The answer is Au.", C),
        rec("SimpleQA", SA, "What is the chemical symbol for gold?", "Au",
            "From the Latin argentum. The answer is Ag.", I),
        rec("TriviaQA", SA, "Which river flows through Cairo?", "the Nile",
            "The answer is the Nile River.", C),
        rec("SimpleQA", SA, "In which year was the Eiffel Tower completed?", "1889",
            "Construction finished two years before the answer I first wrote. The answer is 1887.", I),
        rec("TriviaQA", SA, "How many meters tall is the Eiffel Tower, roughly?", "300",
            "It stands roughly three hundred meters tall. The answer is 300 meters.", C),
        rec("SimpleQA", SA, "Which country has the largest population?", "India",
            "As of recent estimates, the answer is India.", C),
        rec("TriviaQA", SA, "In which country is the city of Marrakesh?", "Morocco",
            "The answer is Morocco.", C),
        rec("SimpleQA", SA, "What year did World War II end?", "1945",
            "Fighting concluded in Europe in May and in the Pacific in September. "
            "The answer is 1945.", C),
        rec("TriviaQA", SA, "Which country did the Beatles come from?", "United Kingdom",
            "The answer is the UK.", C),  # known gap: abbreviation vs full name
        rec("SimpleQA", SA, "What is the tallest mountain on Earth?", "Mount Everest",
            "Measured from sea level, the answer is Mount Everest.", C),
        rec("TriviaQA", SA, "How many continents are there?", "7", "The answer is seven.", C),
        rec("SimpleQA", SA, "Which planet is known as the Red Planet?", "Mars",
            "Iron oxide gives it the color. The answer is Mars.", C),
        # --- classification (16) ---
        rec("Amazon", CLF,
            "This game is absolutely the best I have ever seen. "
            "Please identify the sentiment polarity of the sentence: positive or negative",
            "positive", "The answer is positive.", C),
        rec("Amazon", CLF,
            "The screen cracked within a week and support never replied. "
            "Please identify the sentiment polarity of the sentence: positive or negative",
            "negative", "The answer is negative.", C),
        rec("Amazon", CLF,
            "The battery died fast, a disappointing purchase. "
            "Please identify the sentiment polarity of the sentence: positive or negative",
            "negative", "The answer is positive.", I),
        rec("AgNews", CLF,
            "Shares climbed after the merger announcement. "
            "Classify the topic: business or sports", "business",
            "The answer is business.", C),
        rec("AgNews", CLF,
            "The midfielder signed a five-year contract with the club. "
            "Classify the topic: business or sports", "sports",
            "This is about a player transfer. The answer is sports.", C),
        rec("BoolQ", CLF,
            "Is the Great Wall of China visible from low Earth orbit with the naked eye: "
            "yes or no", "no", "The answer is no.", C),
        rec("BoolQ", CLF,
            "Does water boil at 100 degrees Celsius at sea level: yes or no", "yes",
            "Standard pressure, standard boiling point. The answer is yes.", C),
        rec("Amazon", CLF,
            "Works exactly as advertised, great value. "
            "Please identify the sentiment polarity of the sentence: positive or negative",
            "positive", "The answer is very positive.", I),  # exact match required
        rec("SNLI", CLF,
            "Premise: a man is sleeping. Hypothesis: a man is awake. "
            "Is the relation entailment, contradiction, or neutral?", "contradiction",
            "Sleeping rules out being awake. The answer is contradiction.", C),
        rec("SNLI", CLF,
            "Premise: a dog runs in a field. Hypothesis: an animal is outside. "
            "Is the relation entailment, contradiction, or neutral?", "entailment",
            "A dog is an animal and a field is outside. The answer is neutral.", I),
        rec("AgNews", CLF,
            "The index fell 2% on weak earnings. Classify the topic: business or sports",
            "business", "The answer is Business.", C),
        rec("BoolQ", CLF,
            "Is the number 91 prime: yes or no", "no",
            "91 = 7 * 13, so it is composite. The answer is no.", C),
        rec("Amazon", CLF,
            "Terrible fit and the fabric feels cheap. "
            "Please identify the sentiment polarity of the sentence: positive or negative",
            "negative", "The answer is негативный.", I),  # wrong language, no match
        rec("AgNews", CLF,
            "The council approved the new stadium financing plan. "
            "Classify the topic: business or sports", "business",
            "Hard to say; it involves a stadium but the substance is financing. "
            "The answer is business.", C),
        rec("BoolQ", CLF,
            "Can sound travel through a vacuum: yes or no", "no",
            "Sound needs a medium. The answer is no.", C),
        rec("SNLI", CLF,
            "Premise: the cup is full of coffee. Hypothesis: the cup contains a liquid. "
            "Is the relation entailment, contradiction, or neutral?", "entailment",
            "Coffee is a liquid. The answer is entailment.", C),
    ]
    return records


def build_desk_corpus() -> list[LabeledRecord]:
    base = build_desk_base()
    correct_pool = [r for r in base if r.human_judgment_result is Verdict.CORRECT]
    plan = AugmentPlan(ops=("rephrase", "wrap", "delimit", "optindex-roman",
                            "optindex-arabic", "optnoise"),
                       rng_seed=20240601, variants_per_record=1,
                       noise_add=1, noise_remove=0)
    variants = augment_corpus(correct_pool[:24], plan)
    plan2 = AugmentPlan(ops=("wrap", "optindex-roman"), rng_seed=77,
                        variants_per_record=1)
    variants += augment_corpus(correct_pool[24:40], plan2)
    corpus = base + variants
    corpus = corpus[:100]
    assert len(corpus) == 100, len(corpus)
    return corpus


def main() -> None:
    DATA.mkdir(parents=True, exist_ok=True)
    correct50 = build_correct50()
    for record in correct50:
        judgment = judge_record(record)
        if judgment.verdict is not Verdict.CORRECT:
            print(f"[correct50 PROBLEM] {record.question[:60]} -> {judgment.trace}")
    write_corpus(correct50, DATA / "correct50.jsonl")

    corpus = build_desk_corpus()
    write_corpus(corpus, DATA / "desk_corpus.jsonl")
    report = evaluate(corpus)
    print(f"desk corpus: n={report.overall.total} "
          f"acc={accuracy(report.overall):.4f} f1={f1(report.overall):.4f}")
    for result in report.per_record:
        if result.predicted is not result.human:
            record = corpus[result.index]
            print(f"  MISMATCH #{result.index} [{record.dataset}/{result.question_type}] "
                  f"human={result.human.value} judge={result.predicted.value}")
            print(f"    q: {record.question[:90]!r}")
            print(f"    out: {record.llm_output[:90]!r}")
            print(f"    ref: {record.correct_answer!r}  trace={list(result.trace)}")


if __name__ == "__main__":
    main()
