#!/usr/bin/env python3
"""Writes small Princeton-WordNet-format databases used by the test suites.

Run from this directory: python3 make_wordnet_fixtures.py
Outputs wordnet/ (taxonomy used by metric and end-to-end tests) and
wordnet10/ (ten noun synsets with hand-computed closures).
"""
import os

HEADER = [
    "  1 Fixture database in WordNet 3.0 layout.",
    "  2 Synthetic content for tests; not the Princeton release.",
    "  3 ",
]

# name: (words, [(pointer_symbol, target_name)], gloss)
NOUNS = {
    "entity": (["entity"], [], "that which is perceived to have its own distinct existence"),
    "physical_entity": (["physical_entity"], [("@", "entity")], "an entity that has physical existence"),
    "abstraction": (["abstraction", "abstract_entity"], [("@", "entity")], "a general concept"),
    "object": (["object", "physical_object"], [("@", "physical_entity")], "a tangible and visible entity"),
    "whole": (["whole", "unit"], [("@", "object")], "an assemblage of parts regarded as a single entity"),
    "living_thing": (["living_thing", "animate_thing"], [("@", "whole")], "a living entity"),
    "organism": (["organism", "being"], [("@", "living_thing")], "a living thing that can act independently"),
    "causal_agent": (["causal_agent", "cause"], [("@", "physical_entity")], "any entity that produces an effect"),
    "person": (["person", "individual", "someone", "somebody"], [("@", "organism"), ("@", "causal_agent")], "a human being"),
    "animal": (["animal", "animate_being", "beast"], [("@", "organism")], "a living organism"),
    "chordate": (["chordate"], [("@", "animal")], "an animal with a notochord"),
    "vertebrate": (["vertebrate", "craniate"], [("@", "chordate")], "an animal having a bony spinal column"),
    "mammal": (["mammal"], [("@", "vertebrate")], "a warm-blooded vertebrate"),
    "placental": (["placental", "eutherian"], [("@", "mammal")], "a mammal having a placenta"),
    "carnivore": (["carnivore"], [("@", "placental")], "a terrestrial or aquatic flesh-eating mammal"),
    "canine": (["canine", "canid"], [("@", "carnivore")], "a mammal of the family Canidae"),
    "domestic_animal": (["domestic_animal", "domesticated_animal"], [("@", "animal")], "an animal bred to live with humans"),
    "dog": (["dog", "domestic_dog", "Canis_familiaris"], [("@", "canine"), ("@", "domestic_animal")], "a domesticated canid"),
    "adult": (["adult", "grownup"], [("@", "person")], "a fully developed person"),
    "man": (["man", "adult_male"], [("@", "adult")], "an adult person who is male"),
    "woman": (["woman", "adult_female"], [("@", "adult")], "an adult person who is female"),
    "professional": (["professional", "professional_person"], [("@", "adult")], "a person engaged in a learned profession"),
    "educator": (["educator", "pedagogue"], [("@", "professional")], "someone who educates young people"),
    "teacher": (["teacher", "instructor"], [("@", "educator")], "a person whose occupation is teaching"),
    "engineer": (["engineer", "applied_scientist", "technologist"], [("@", "person")], "a person who uses scientific knowledge"),
    "friend": (["friend"], [("@", "person")], "a person you know well"),
    "matter": (["matter"], [("@", "physical_entity")], "that which has mass"),
    "substance": (["substance"], [("@", "matter")], "the real physical matter"),
    "food": (["food", "nutrient"], [("@", "substance")], "any substance that can be metabolized"),
    "foodstuff": (["foodstuff", "food_product"], [("@", "food")], "a substance that can be used as food"),
    "dairy_product": (["dairy_product"], [("@", "foodstuff")], "milk and butter and cheese"),
    "cheese": (["cheese"], [("@", "dairy_product")], "a solid food prepared from milk"),
    "beverage": (["beverage", "drink"], [("@", "food")], "any liquid suitable for drinking"),
    "tea": (["tea"], [("@", "beverage")], "a beverage made by steeping leaves"),
    "coffee": (["coffee", "java"], [("@", "beverage")], "a beverage made from roasted beans"),
    "location": (["location"], [("@", "physical_entity")], "a point or extent in space"),
    "region": (["region"], [("@", "location")], "the extended spatial location of something"),
    "geographical_area": (["geographical_area", "area"], [("@", "region")], "a demarcated area of the Earth"),
    "urban_area": (["urban_area", "populated_area"], [("@", "geographical_area")], "a geographical area constituting a city"),
    "municipality": (["municipality"], [("@", "urban_area")], "an urban district having corporate status"),
    "city": (["city", "metropolis"], [("@", "municipality")], "a large and densely populated urban area"),
    "munich": (["Munich", "Muenchen"], [("@i", "city")], "the capital of Bavaria"),
    "workplace": (["workplace", "work"], [("@", "location")], "a place where work is done"),
    "office_place": (["office", "business_office"], [("@", "workplace")], "place of business"),
    "act": (["act", "deed"], [("@", "abstraction")], "something that people do"),
    "activity": (["activity"], [("@", "act")], "any specific behavior"),
    "work_activity": (["work"], [("@", "activity")], "activity directed toward making something"),
    "position": (["position", "post", "berth", "office"], [("@", "abstraction")], "a job in an organization"),
    "measure": (["measure", "quantity", "amount"], [("@", "abstraction")], "how much there is of something"),
    "fundamental_quantity": (["fundamental_quantity"], [("@", "measure")], "one of the four quantities"),
    "time_period": (["time_period", "period"], [("@", "fundamental_quantity")], "an amount of time"),
    "time": (["time"], [("@", "time_period")], "an indefinite period"),
    "day": (["day", "twenty-four_hours"], [("@", "time_period")], "time for Earth to make a complete rotation"),
    "morning": (["morning", "morn"], [("@", "time_period")], "the time period between dawn and noon"),
    "group": (["group", "grouping"], [("@", "abstraction")], "any number of entities considered as a unit"),
    "social_group": (["social_group"], [("@", "group")], "people sharing some social relation"),
    "family": (["family", "household"], [("@", "social_group")], "a social unit living together"),
    "communication": (["communication"], [("@", "abstraction")], "something that is communicated"),
    "music": (["music"], [("@", "communication")], "an artistic form of auditory communication"),
    "attitude": (["attitude", "mental_attitude"], [("@", "abstraction")], "a complex mental state"),
    "grudge": (["grudge", "score", "grievance"], [("@", "attitude")], "a resentment strong enough to justify retaliation"),
    "hobby": (["hobby", "pursuit"], [("@", "activity")], "an auxiliary activity"),
    "gardening": (["gardening", "horticulture"], [("@", "hobby")], "the cultivation of plants"),
}

# Sense order per lemma (most frequent first). Lemmas not listed map to the
# synsets that contain them, in dictionary order.
NOUN_SENSE_ORDER = {
    "office": ["office_place", "position"],
    "work": ["work_activity", "workplace"],
}

ADJS = {
    "punctual": ("a", ["punctual"], [("!", "unpunctual", 1, 1)], "acting or arriving exactly at the time appointed"),
    "unpunctual": ("a", ["unpunctual"], [("!", "punctual", 1, 1), ("&", "behindhand", 0, 0)], "not punctual"),
    "behindhand": ("s", ["behindhand", "late", "tardy"], [("&", "unpunctual", 0, 0)], "after the expected time"),
    "good": ("a", ["good"], [("!", "bad", 1, 1), ("&", "fine", 0, 0), ("&", "nice", 0, 0)], "having desirable qualities"),
    "good_full": ("s", ["full", "good"], [("&", "full", 0, 0)], "having the normally expected amount"),
    "full": ("a", ["full"], [("&", "good_full", 0, 0)], "containing as much as is possible"),
    "bad": ("a", ["bad"], [("!", "good", 1, 1), ("&", "awful", 0, 0)], "having undesirable qualities"),
    "fine": ("s", ["fine", "all_right"], [("&", "good", 0, 0)], "being satisfactory"),
    "nice": ("s", ["nice"], [("&", "good", 0, 0)], "pleasant or pleasing"),
    "awful": ("s", ["awful", "terrible"], [("&", "bad", 0, 0)], "exceptionally bad"),
    "happy": ("a", ["happy"], [("!", "unhappy", 1, 1), ("&", "glad", 0, 0)], "enjoying well-being"),
    "unhappy": ("a", ["unhappy"], [("!", "happy", 1, 1)], "experiencing unhappiness"),
    "glad": ("s", ["glad"], [("&", "happy", 0, 0)], "showing pleasure"),
    "large": ("a", ["large", "big"], [("!", "small", 1, 1), ("&", "huge", 0, 0)], "above average in size"),
    "small": ("a", ["small", "little"], [("!", "large", 1, 1)], "limited in size"),
    "huge": ("s", ["huge", "immense", "vast"], [("&", "large", 0, 0)], "unusually great in size"),
    "careful": ("a", ["careful"], [], "exercising caution"),
    "german": ("a", ["German"], [], "of or relating to Germany"),
    "calm": ("a", ["calm"], [], "not agitated"),
    "spicy": ("s", ["spicy", "hot"], [("&", "calm", 0, 0)], "producing a burning sensation"),
}

ADJ_SENSE_ORDER = {
    "good": ["good", "good_full"],
    "full": ["full", "good_full"],
}

# Ten noun synsets with closures worked out by hand in the tests.
NOUNS10 = {
    "root": (["root"], [], "top"),
    "alpha": (["alpha"], [("@", "root")], "one below the top"),
    "beta": (["beta"], [("@", "root")], "another one below the top"),
    "gamma": (["gamma"], [("@", "alpha")], "two below"),
    "delta": (["delta"], [("@", "alpha"), ("@", "beta")], "two parents"),
    "epsilon": (["epsilon"], [("@", "gamma"), ("@", "delta")], "diamond join"),
    "zeta": (["zeta", "epsilon"], [("@", "beta")], "second sense of epsilon"),
    "eta": (["eta"], [("@", "epsilon")], "below the diamond"),
    "theta": (["theta"], [("@i", "zeta")], "instance"),
    "iota": (["iota"], [("@", "eta"), ("@", "theta")], "deepest"),
}
NOUNS10_SENSE_ORDER = {"epsilon": ["epsilon", "zeta"]}

ADJS10 = {
    "quick": ("a", ["quick", "fast"], [("!", "slow", 1, 1)], "moving rapidly"),
    "slow": ("a", ["slow"], [("!", "quick", 1, 1), ("&", "sluggish", 0, 0)], "not moving rapidly"),
    "sluggish": ("s", ["sluggish"], [("&", "slow", 0, 0)], "markedly slow"),
    "calm": ("a", ["calm"], [], "not agitated"),
}

LEX_FILE = {"n": "03", "a": "00"}


def fmt_words(words, with_marker=False):
    parts = ["%02x" % len(words)]
    for w in words:
        parts += [w.replace(" ", "_"), "0"]
    return " ".join(parts)


def write_data(path, pos, synsets):
    """synsets: ordered list of (name, ss_type, words, ptrs, gloss).

    ptrs are (symbol, target_name, source, target) tuples.
    """
    offsets = {}

    def render(offset_of):
        lines = []
        for name, ss_type, words, ptrs, gloss in synsets:
            ptr_parts = []
            for sym, target, src, tgt in ptrs:
                tpos = pos
                toff = offset_of(target)
                ptr_parts.append("%s %08d %s %02x%02x" % (sym, toff, tpos, src, tgt))
            body = "%s %s %s %s %03d" % (
                "%08d", LEX_FILE[pos], ss_type, fmt_words(words), len(ptrs))
            if ptr_parts:
                body += " " + " ".join(ptr_parts)
            body += " | " + gloss + "  \n"
            lines.append((name, body))
        return lines

    header = "".join(h + "\n" for h in HEADER)
    # Offsets are fixed-width, so line lengths do not depend on their values.
    pos_cursor = len(header.encode())
    for name, body in render(lambda _t: 0):
        offsets[name] = pos_cursor
        pos_cursor += len((body % 0).encode())
    out = header
    for name, body in render(lambda t: offsets.get(t, 0)):
        out += body % offsets[name]
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(out)
    return offsets


def write_index(path, pos, synsets, offsets, order):
    lemma_map = {}
    for name, _ss, words, _p, _g in synsets:
        for w in words:
            lemma_map.setdefault(w.lower(), []).append(name)
    lines = []
    for lemma in sorted(lemma_map):
        names = order.get(lemma, lemma_map[lemma])
        syms = sorted({p[0] for n in names for p in dict((s[0], s) for s in synsets)[n][3]})
        line = "%s %s %d %d" % (lemma, pos, len(names), len(syms))
        if syms:
            line += " " + " ".join(syms)
        line += " %d 0 " % len(names)
        line += " ".join("%08d" % offsets[n] for n in names)
        lines.append(line + "  \n")
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write("".join(h + "\n" for h in HEADER))
        f.write("".join(lines))


def build(dirname, nouns, noun_order, adjs, adj_order):
    os.makedirs(dirname, exist_ok=True)
    noun_list = [(n, "n", w, [(s, t, 0, 0) for s, t in p], g) for n, (w, p, g) in nouns.items()]
    offs = write_data(os.path.join(dirname, "data.noun"), "n", noun_list)
    write_index(os.path.join(dirname, "index.noun"), "n", noun_list, offs, noun_order)
    adj_list = [(n, ss, w, p, g) for n, (ss, w, p, g) in adjs.items()]
    aoffs = write_data(os.path.join(dirname, "data.adj"), "a", adj_list)
    write_index(os.path.join(dirname, "index.adj"), "a", adj_list, aoffs, adj_order)


if __name__ == "__main__":
    here = os.path.dirname(os.path.abspath(__file__))
    build(os.path.join(here, "wordnet"), NOUNS, NOUN_SENSE_ORDER, ADJS, ADJ_SENSE_ORDER)
    build(os.path.join(here, "wordnet10"), NOUNS10, NOUNS10_SENSE_ORDER, ADJS10, {})
