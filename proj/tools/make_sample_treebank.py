#!/usr/bin/env python3
# Copyright 2026 The grammeval Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Generates the bundled German-like sample treebank and its lexicon.

The sentences are synthetic: a small grammar over real German paradigms,
annotated in SUD style. A few sentences use a dative-object verb so that
not every rule is satisfied everywhere.

    tools/make_sample_treebank.py --sentences 1000 --out-dir data/sample
"""

import argparse
import pathlib
import random

CASES = ["Nom", "Acc", "Dat", "Gen"]
TAG = {"Nom": "NOM", "Acc": "ACC", "Dat": "DAT", "Gen": "GEN",
       "Sing": "SG", "Plur": "PL", "Masc": "MASC", "Fem": "FEM",
       "Neut": "NEUT"}

# lemma: gender, singular forms, plural forms (Nom, Acc, Dat, Gen)
NOUNS = {
    "Mann": ("Masc", "Mann Mann Mann Mannes", "Männer Männer Männern Männer"),
    "Frau": ("Fem", "Frau Frau Frau Frau", "Frauen Frauen Frauen Frauen"),
    "Kind": ("Neut", "Kind Kind Kind Kindes", "Kinder Kinder Kindern Kinder"),
    "Hund": ("Masc", "Hund Hund Hund Hundes", "Hunde Hunde Hunden Hunde"),
    "Lehrer": ("Masc", "Lehrer Lehrer Lehrer Lehrers",
               "Lehrer Lehrer Lehrern Lehrer"),
    "Katze": ("Fem", "Katze Katze Katze Katze", "Katzen Katzen Katzen Katzen"),
    "Buch": ("Neut", "Buch Buch Buch Buches", "Bücher Bücher Büchern Bücher"),
    "Stadt": ("Fem", "Stadt Stadt Stadt Stadt", "Städte Städte Städten Städte"),
    "Brief": ("Masc", "Brief Brief Brief Briefes", "Briefe Briefe Briefen Briefe"),
    "Haus": ("Neut", "Haus Haus Haus Hauses", "Häuser Häuser Häusern Häuser"),
    "Blume": ("Fem", "Blume Blume Blume Blume", "Blumen Blumen Blumen Blumen"),
    "Tisch": ("Masc", "Tisch Tisch Tisch Tisches", "Tische Tische Tischen Tische"),
    "Apfel": ("Masc", "Apfel Apfel Apfel Apfels", "Äpfel Äpfel Äpfeln Äpfel"),
    "Garten": ("Masc", "Garten Garten Garten Gartens",
               "Gärten Gärten Gärten Gärten"),
}
ANIMATE = ["Mann", "Frau", "Kind", "Hund", "Lehrer", "Katze"]

ARTICLE = {
    ("Masc", "Sing"): "der den dem des",
    ("Fem", "Sing"): "die die der der",
    ("Neut", "Sing"): "das das dem des",
    ("Plur",): "die die den der",
}

ADJECTIVES = ["alt", "klein", "groß", "neu", "schön", "rot"]
# weak endings after the definite article
WEAK = {
    ("Masc", "Sing"): "e en en en",
    ("Fem", "Sing"): "e e en en",
    ("Neut", "Sing"): "e e en en",
    ("Plur",): "en en en en",
}
# strong plural endings, used when the noun has no article
STRONG_PLURAL = "e e en er"

# lemma: present forms 1sg 2sg 3sg 1pl 2pl 3pl
VERBS = {
    "sehen": "sehe siehst sieht sehen seht sehen",
    "lesen": "lese liest liest lesen lest lesen",
    "kaufen": "kaufe kaufst kauft kaufen kauft kaufen",
    "finden": "finde findest findet finden findet finden",
    "suchen": "suche suchst sucht suchen sucht suchen",
    "tragen": "trage trägst trägt tragen tragt tragen",
    "malen": "male malst malt malen malt malen",
}
DATIVE_VERBS = {"helfen": "helfe hilfst hilft helfen helft helfen"}

PRONOUNS = [
    ("ich", "Sing", "1", None), ("du", "Sing", "2", None),
    ("er", "Sing", "3", "Masc"), ("sie", "Sing", "3", "Fem"),
    ("es", "Sing", "3", "Neut"), ("wir", "Plur", "1", None),
    ("ihr", "Plur", "2", None), ("sie", "Plur", "3", None),
]

PREPOSITIONS = ["mit", "in", "auf", "bei", "nach", "von", "zu"]


def feats(**kv):
    items = sorted((k, v) for k, v in kv.items() if v is not None)
    return "|".join(f"{k}={v}" for k, v in items) or "_"


def person_slot(number, person):
    return (int(person) - 1) + (3 if number == "Plur" else 0)


class Sentence:
    def __init__(self):
        self.rows = []

    def add(self, form, lemma, upos, xpos, fts, head, deprel):
        self.rows.append([form, lemma, upos, xpos, fts, head, deprel])
        return len(self.rows)


def noun_phrase(rng, sent, lemma, case, number, head, deprel, bare_ok=True):
    gender, sing, plur = NOUNS[lemma]
    forms = (sing if number == "Sing" else plur).split()
    key = (gender, number) if number == "Sing" else ("Plur",)
    agr_gender = gender if number == "Sing" else None
    ci = CASES.index(case)
    has_det = number == "Sing" or not bare_ok or rng.random() < 0.5
    n_adj = rng.choices([0, 1, 2], weights=[15, 65, 20])[0]
    # the noun's index is known once its premodifiers are counted
    noun_id = len(sent.rows) + int(has_det) + n_adj + 1
    if has_det:
        sent.add(ARTICLE[key].split()[ci], "der", "DET", "ART",
                 feats(Case=case, Definite="Def", Gender=agr_gender,
                       Number=number, PronType="Art"),
                 noun_id, "det")
    ending = WEAK[key].split()[ci] if has_det else STRONG_PLURAL.split()[ci]
    for adj in rng.sample(ADJECTIVES, n_adj):
        sent.add(adj + ending, adj, "ADJ", "ADJA",
                 feats(Case=case, Degree="Pos", Gender=agr_gender, Number=number),
                 noun_id, "mod")
    got = sent.add(forms[ci], lemma, "NOUN", "NN",
                   feats(Case=case, Gender=gender, Number=number), head, deprel)
    assert got == noun_id
    return noun_id


def make_sentence(rng):
    sent = Sentence()
    # Token ids are assigned left to right; heads that point forward are
    # patched after the verb is placed.
    if rng.random() < 0.35:
        form, number, person, gender = rng.choice(PRONOUNS)
        subj = sent.add(form, form, "PRON", "PPER",
                        feats(Case="Nom", Gender=gender, Number=number,
                              Person=person, PronType="Prs"),
                        None, "subj")
        subj_ids = [subj]
    else:
        number, person = rng.choice(["Sing", "Sing", "Plur"]), "3"
        subj = noun_phrase(rng, sent, rng.choice(ANIMATE), "Nom", number, None,
                           "subj")
        subj_ids = [subj]
    dative = rng.random() < 0.04
    verbs = DATIVE_VERBS if dative else VERBS
    vlemma = rng.choice(sorted(verbs))
    verb = sent.add(verbs[vlemma].split()[person_slot(number, person)], vlemma,
                    "VERB", "VVFIN",
                    feats(Mood="Ind", Number=number, Person=person, Tense="Pres",
                          VerbForm="Fin"),
                    0, "root")
    for i in subj_ids:
        sent.rows[i - 1][5] = verb
    obj = noun_phrase(rng, sent, rng.choice(sorted(NOUNS)),
                      "Dat" if dative else "Acc",
                      rng.choice(["Sing", "Sing", "Plur"]), verb, "comp:obj")
    if rng.random() < 0.3:
        noun_phrase(rng, sent, rng.choice(sorted(NOUNS)), "Gen",
                    rng.choice(["Sing", "Plur"]), obj, "mod", bare_ok=False)
    n_pp = 1 if rng.random() < 0.85 else 0
    if n_pp and rng.random() < 0.35:
        n_pp = 2
    for _ in range(n_pp):
        prep = rng.choice(PREPOSITIONS)
        adp = sent.add(prep, prep, "ADP", "APPR", "_", verb, "mod")
        noun_phrase(rng, sent, rng.choice(sorted(NOUNS)), "Dat",
                    rng.choice(["Sing", "Sing", "Plur"]), adp, "comp:obj")
    sent.add(".", ".", "PUNCT", "$.", "_", verb, "punct")
    return sent


def render(sent, sent_id):
    forms = [r[0] for r in sent.rows]
    words = forms[:-1]
    words[0] = words[0][0].upper() + words[0][1:]
    text = " ".join(words) + "."
    lines = [f"# sent_id = {sent_id}", f"# text = {text}"]
    for i, (form, lemma, upos, xpos, fts, head, deprel) in enumerate(sent.rows, 1):
        if i == 1:
            form = words[0]
        misc = "SpaceAfter=No" if i == len(sent.rows) - 1 else "_"
        lines.append("\t".join([str(i), form, lemma, upos, xpos, fts, str(head),
                                deprel, "_", misc]))
    return "\n".join(lines) + "\n\n"


def lexicon_rows():
    rows = []
    for lemma, (gender, sing, plur) in sorted(NOUNS.items()):
        for number, forms in (("Sing", sing), ("Plur", plur)):
            for case, form in zip(CASES, forms.split()):
                rows.append((lemma, form, f"N;{TAG[case]};{TAG[number]}"))
    for key, forms in ARTICLE.items():
        for case, form in zip(CASES, forms.split()):
            gender = f";{TAG[key[0]]}" if len(key) == 2 else ""
            number = "SG" if len(key) == 2 else "PL"
            rows.append(("der", form, f"DET;{TAG[case]}{gender};{number}"))
    for adj in ADJECTIVES:
        for key, ends in WEAK.items():
            for case, end in zip(CASES, ends.split()):
                gender = f";{TAG[key[0]]}" if len(key) == 2 else ""
                number = "SG" if len(key) == 2 else "PL"
                rows.append((adj, adj + end, f"ADJ;{TAG[case]}{gender};{number}"))
    for lemma, forms in sorted({**VERBS, **DATIVE_VERBS}.items()):
        for slot, form in enumerate(forms.split()):
            person = slot % 3 + 1
            number = "SG" if slot < 3 else "PL"
            rows.append((lemma, form, f"V;IND;PRS;{person};{number}"))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sentences", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=20260101)
    ap.add_argument("--out-dir", type=pathlib.Path, default=pathlib.Path("data/sample"))
    args = ap.parse_args()

    rng = random.Random(args.seed)
    args.out_dir.mkdir(parents=True, exist_ok=True)
    with open(args.out_dir / "de_sample.conllu", "w", encoding="utf-8", newline="\n") as f:
        f.write("# newdoc id = de-sample\n")
        for i in range(1, args.sentences + 1):
            f.write(render(make_sentence(rng), f"de-sample-{i:04d}"))
    with open(args.out_dir / "de_sample.unimorph.tsv", "w", encoding="utf-8",
              newline="\n") as f:
        for row in lexicon_rows():
            f.write("\t".join(row) + "\n")


if __name__ == "__main__":
    main()
