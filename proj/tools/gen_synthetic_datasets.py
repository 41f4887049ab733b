#!/usr/bin/env python3
"""Writes the bundled synthetic datasets under data/.

The item names are ordinary words; the attribute tables are synthetic.
Each table combines
  * code attributes: item k gets bit j of k, so a sequence of these
    questions can always halve the remaining set,
  * group attributes: one-hot over the top code bits,
  * narrow attributes: true for one to three items.
That shape lets a reward-maximizing questioner finish in about log2(N)+1
turns while uniformly random questioning mostly asks uninformative things.

Usage: python3 tools/gen_synthetic_datasets.py [--out data]
"""

import argparse
import json
import math
import random
from pathlib import Path

COMMON_ITEMS = """
apple banana carrot tomato potato onion lemon grape cherry peach
dog cat horse cow sheep pig chicken duck rabbit mouse
lion tiger elephant giraffe zebra monkey bear wolf fox deer
eagle owl penguin parrot shark whale dolphin octopus crab frog
hammer screwdriver wrench saw drill shovel rake ladder broom bucket
chair table sofa bed lamp mirror clock pillow blanket curtain
car bicycle bus train airplane boat motorcycle truck scooter helicopter
piano guitar violin drum flute trumpet harp
phone laptop television camera radio keyboard headphones printer
book pencil pen notebook scissors envelope
shoe sock hat scarf glove jacket umbrella backpack wallet watch
cup plate spoon fork knife kettle pan oven fridge toaster
""".split()

COMMON_CODE = [
    "is_alive", "is_bigger_than_a_breadbox", "is_usually_found_indoors",
    "is_made_of_metal", "is_used_daily", "can_be_held_in_one_hand", "makes_sound",
]
COMMON_GROUPS = ["is_natural", "is_a_household_object", "is_a_machine", "is_for_leisure"]
COMMON_NARROW = [
    "has_stripes", "has_feathers", "has_wheels", "has_strings", "is_edible_raw", "has_a_screen",
    "is_sharp", "is_soft", "is_yellow", "is_red", "is_green", "can_fly", "can_swim", "lives_in_water",
    "has_four_legs", "has_a_tail", "is_hot_when_used", "uses_batteries", "needs_fuel", "is_worn",
    "is_made_of_wood", "is_made_of_glass", "is_made_of_paper", "is_made_of_fabric", "is_round",
    "is_heavy", "is_fragile", "is_expensive", "is_found_in_kitchens", "is_found_in_gardens",
    "is_found_in_offices", "is_found_in_schools", "is_a_toy", "is_a_pet", "is_wild", "is_nocturnal",
    "grows_on_trees", "has_seeds", "has_a_handle", "has_buttons", "has_a_lid", "has_pages",
    "is_musical", "is_used_for_cleaning", "is_used_for_cooking", "is_used_for_writing",
    "is_used_for_transport", "is_used_outdoors", "is_older_than_a_century", "is_sold_in_pairs",
    "can_be_folded", "has_a_motor", "has_a_plug", "is_transparent", "is_sticky", "smells_strong",
    "is_cold", "is_striped_black_and_white", "has_horns", "has_a_shell",
]

DX_DISEASES = ["Allergic rhinitis", "Upper respiratory tract infection", "Pneumonia",
               "Hand, foot and mouth disease", "Pediatric diarrhea"]
MEDICAL_CODE = ["fever", "cough", "runny_nose", "rash", "diarrhea"]
MEDICAL_GROUPS = ["sore_throat", "vomiting"]
MEDICAL_NARROW = ["sneezing", "itchy_eyes", "chest_pain", "shortness_of_breath", "mouth_ulcers",
                  "blisters_on_hands", "abdominal_pain", "loss_of_appetite", "headache", "fatigue",
                  "wheezing", "nasal_congestion", "dehydration", "chills", "muscle_aches"]
MEDDG_DISEASES = ["Gastritis", "Enteritis", "Esophagitis", "Cholecystitis", "Pancreatitis",
                  "Appendicitis", "Irritable bowel syndrome", "Gastric ulcer", "Duodenal ulcer",
                  "Constipation", "Cold", "Bronchitis", "Pneumonia", "Allergic rhinitis",
                  "Upper respiratory tract infection"]
MEDDG_CODE = ["abdominal_pain", "cough", "acid_reflux", "fever"]

LAPTOP_PARTS = ["battery", "screen", "keyboard", "touchpad", "wifi adapter", "charger port", "fan",
                "speaker", "webcam", "hard drive", "usb port", "bluetooth module", "operating system",
                "microphone", "hinge", "memory"]
CAR_PARTS = ["engine", "starter motor", "alternator", "brakes", "headlights", "air conditioning",
             "power steering", "fuel pump", "radiator", "spark plugs", "ignition switch", "wipers",
             "central locking", "electric windows", "exhaust", "clutch", "gearbox"]
SYMPTOMS = ["does not work", "makes a noise", "is intermittent", "overheats", "is slow",
            "shows an error"]
TROUBLE_CODE = ["device_powers_on", "problem_started_recently", "warning_light_or_message",
                "problem_is_constant", "noise_is_present", "worse_when_cold", "after_recent_repair",
                "affects_other_functions"]
TROUBLE_GROUPS = ["is_laptop_issue", "is_car_issue"]
TROUBLE_NARROW = ["smell_of_burning", "visible_damage", "liquid_spill", "dropped_recently",
                  "battery_below_half", "software_updated", "dashboard_flashing", "clicking_sound",
                  "grinding_sound", "smoke_visible", "happens_while_driving", "happens_while_charging",
                  "only_at_startup", "after_long_use", "fluid_leak", "fuse_blown", "loose_cable",
                  "corroded_contact", "screen_flicker", "steering_vibration"]


def bit(k, j):
    return bool((k >> j) & 1)


def build_items(labels, code_names, group_names, narrow_names, rng, ids=None):
    n = len(labels)
    nbits = max(1, math.ceil(math.log2(n)))
    assert len(code_names) >= nbits, (len(code_names), nbits)
    code_names = code_names[:nbits]
    order = list(range(n))
    rng.shuffle(order)  # code assignment independent of list position
    items = []
    for pos, label in enumerate(labels):
        k = order[pos]
        attrs = {code_names[j]: bit(k, j) for j in range(nbits)}
        if group_names:
            top = k * len(group_names) // (1 << nbits)
            for g, name in enumerate(group_names):
                attrs[name] = top == g
        items.append({"id": ids[pos] if ids else slug(label), "label": label,
                      "attributes": attrs, "prior": 1.0})
    for name in narrow_names:
        chosen = set(rng.sample(range(n), rng.randint(1, min(3, n - 1))))
        for pos, item in enumerate(items):
            item["attributes"][name] = pos in chosen
    return items


def slug(label):
    out = "".join(c.lower() if c.isalnum() else "_" for c in label)
    while "__" in out:
        out = out.replace("__", "_")
    return out.strip("_")


def questions_for(names, style):
    def words(name):
        return name.replace("_", " ")

    book = {}
    for name in names:
        if style == "20q":
            w = words(name)
            if w.startswith("is "):
                book[name] = "Is X " + w[3:] + "?"
            elif w.startswith(("can ", "has ", "makes ", "lives ", "grows ", "needs ", "uses ", "smells ")):
                verb, rest = w.split(" ", 1)
                base = {"can": "Can X", "has": "Does X have", "makes": "Does X make",
                        "lives": "Does X live", "grows": "Does X grow", "needs": "Does X need",
                        "uses": "Does X use", "smells": "Does X smell"}[verb]
                book[name] = f"{base} {rest}?"
            else:
                book[name] = "Is X " + w + "?"
        elif style == "medical":
            book[name] = "Do you have " + words(name) + "?"
        else:
            book[name] = "Is it true that: " + words(name) + "?"
    return book


def medical_report(item, rng):
    present = [k.replace("_", " ") for k, v in sorted(item["attributes"].items()) if v]
    rng.shuffle(present)
    if not present:
        return "I have been feeling unwell for a few days."
    shown = present[: max(1, min(2, len(present)))]
    return "I have " + " and ".join(shown) + "."


def trouble_report(item):
    return "I need help: my " + item["label"].lower() + "."


def dataset(name, scenario, max_turns, items, cases, questions):
    return {"name": name, "scenario": scenario, "max_turns": max_turns,
            "items": items, "questions": questions, "cases": cases}


def all_names(items):
    return sorted({k for it in items for k in it["attributes"]})


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "data"))
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    assert len(COMMON_ITEMS) == 111 and len(set(COMMON_ITEMS)) == 111, len(COMMON_ITEMS)
    rng = random.Random(20240611)
    common = build_items(COMMON_ITEMS, COMMON_CODE, COMMON_GROUPS, COMMON_NARROW, rng)
    docs = {
        "common-like.json": dataset("common-like", "20q", 20, common,
                                    [{"target": it["id"]} for it in common],
                                    questions_for(all_names(common), "20q")),
    }

    things_labels = [f"thing {i:04d}" for i in range(1854)]
    things = build_items(things_labels, [f"property_{j}" for j in range(11)],
                         COMMON_GROUPS, COMMON_NARROW[:8], random.Random(1854))
    things_cases = [{"target": it["id"]} for it in random.Random(7).sample(things, 300)]
    docs["things-like.json"] = dataset("things-like", "20q", 20, things, things_cases,
                                       questions_for(all_names(things), "20q"))

    rng = random.Random(104)
    dx = build_items(DX_DISEASES, MEDICAL_CODE, MEDICAL_GROUPS, MEDICAL_NARROW, rng)
    dx_cases = []
    for i in range(104):
        it = dx[i % len(dx)]
        dx_cases.append({"target": it["id"], "self_report": medical_report(it, rng)})
    docs["dx-like.json"] = dataset("dx-like", "medical", 5, dx, dx_cases,
                                   questions_for(all_names(dx), "medical"))

    rng = random.Random(500)
    meddg = build_items(MEDDG_DISEASES, MEDDG_CODE, [], MEDICAL_NARROW, rng)
    meddg_cases = []
    for i in range(500):
        it = meddg[rng.randrange(len(meddg))]
        meddg_cases.append({"target": it["id"], "self_report": medical_report(it, rng)})
    docs["meddg-like.json"] = dataset("meddg-like", "medical", 5, meddg, meddg_cases,
                                      questions_for(all_names(meddg), "medical"))

    faults = []
    for part in LAPTOP_PARTS:
        for s in SYMPTOMS:
            faults.append("Laptop " + part + " " + s)
    for part in CAR_PARTS:
        for s in SYMPTOMS:
            faults.append("Car " + part + " " + s)
    faults = faults[:153]
    assert len(faults) == 153
    rng = random.Random(153)
    flo = build_items(faults, TROUBLE_CODE, TROUBLE_GROUPS, TROUBLE_NARROW, rng)
    for it in flo:
        it["attributes"]["is_laptop_issue"] = it["label"].startswith("Laptop")
        it["attributes"]["is_car_issue"] = it["label"].startswith("Car")
    docs["flodial-like.json"] = dataset("flodial-like", "trouble", 20, flo,
                                        [{"target": it["id"], "self_report": trouble_report(it)} for it in flo],
                                        questions_for(all_names(flo), "trouble"))

    for fname, doc in docs.items():
        indent = None if fname == "things-like.json" else 1
        (out / fname).write_text(json.dumps(doc, indent=indent, sort_keys=False) + "\n")
        print(f"{fname}: {len(doc['items'])} items, {len(doc['cases'])} cases")


if __name__ == "__main__":
    main()
