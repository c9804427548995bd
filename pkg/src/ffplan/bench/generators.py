"""PDDL instance generators: Gripper, Blocksworld (4- and 3-operator), Logistics."""

from __future__ import annotations

import math
import random

GRIPPER_DOMAIN = """\
(define (domain gripper-strips)
  (:predicates (room ?r) (ball ?b) (gripper ?g)
               (at-robby ?r) (at ?b ?r) (free ?g) (carry ?o ?g))
  (:action move
    :parameters (?from ?to)
    :precondition (and (room ?from) (room ?to) (at-robby ?from))
    :effect (and (at-robby ?to) (not (at-robby ?from))))
  (:action pick
    :parameters (?obj ?room ?gripper)
    :precondition (and (ball ?obj) (room ?room) (gripper ?gripper)
                       (at ?obj ?room) (at-robby ?room) (free ?gripper))
    :effect (and (carry ?obj ?gripper) (not (at ?obj ?room)) (not (free ?gripper))))
  (:action drop
    :parameters (?obj ?room ?gripper)
    :precondition (and (ball ?obj) (room ?room) (gripper ?gripper)
                       (carry ?obj ?gripper) (at-robby ?room))
    :effect (and (at ?obj ?room) (free ?gripper) (not (carry ?obj ?gripper)))))
"""

BLOCKSWORLD_DOMAIN = """\
(define (domain blocksworld)
  (:requirements :strips)
  (:predicates (on ?x ?y) (ontable ?x) (clear ?x) (handempty) (holding ?x))
  (:action pick-up
    :parameters (?x)
    :precondition (and (clear ?x) (ontable ?x) (handempty))
    :effect (and (not (ontable ?x)) (not (clear ?x)) (not (handempty)) (holding ?x)))
  (:action put-down
    :parameters (?x)
    :precondition (holding ?x)
    :effect (and (not (holding ?x)) (clear ?x) (handempty) (ontable ?x)))
  (:action stack
    :parameters (?x ?y)
    :precondition (and (holding ?x) (clear ?y))
    :effect (and (not (holding ?x)) (not (clear ?y)) (clear ?x) (handempty) (on ?x ?y)))
  (:action unstack
    :parameters (?x ?y)
    :precondition (and (on ?x ?y) (clear ?x) (handempty))
    :effect (and (holding ?x) (clear ?y) (not (clear ?x)) (not (handempty))
                 (not (on ?x ?y)))))
"""

BLOCKSWORLD3_DOMAIN = """\
(define (domain blocksworld-3ops)
  (:requirements :strips)
  (:predicates (on ?x ?y) (ontable ?x) (clear ?x))
  (:action move-b-to-b
    :parameters (?b ?from ?to)
    :precondition (and (clear ?b) (clear ?to) (on ?b ?from))
    :effect (and (on ?b ?to) (clear ?from) (not (on ?b ?from)) (not (clear ?to))))
  (:action move-b-to-t
    :parameters (?b ?from)
    :precondition (and (clear ?b) (on ?b ?from))
    :effect (and (ontable ?b) (clear ?from) (not (on ?b ?from))))
  (:action move-t-to-b
    :parameters (?b ?to)
    :precondition (and (clear ?b) (clear ?to) (ontable ?b))
    :effect (and (on ?b ?to) (not (clear ?to)) (not (ontable ?b)))))
"""

LOGISTICS_DOMAIN = """\
(define (domain logistics-strips)
  (:requirements :strips :typing)
  (:types truck airplane - vehicle
          package vehicle - physobj
          airport location - place
          city place physobj - object)
  (:predicates (in-city ?loc - place ?city - city)
               (at ?obj - physobj ?loc - place)
               (in ?pkg - package ?veh - vehicle))
  (:action load-truck
    :parameters (?pkg - package ?truck - truck ?loc - place)
    :precondition (and (at ?truck ?loc) (at ?pkg ?loc))
    :effect (and (not (at ?pkg ?loc)) (in ?pkg ?truck)))
  (:action load-airplane
    :parameters (?pkg - package ?airplane - airplane ?loc - place)
    :precondition (and (at ?pkg ?loc) (at ?airplane ?loc))
    :effect (and (not (at ?pkg ?loc)) (in ?pkg ?airplane)))
  (:action unload-truck
    :parameters (?pkg - package ?truck - truck ?loc - place)
    :precondition (and (at ?truck ?loc) (in ?pkg ?truck))
    :effect (and (not (in ?pkg ?truck)) (at ?pkg ?loc)))
  (:action unload-airplane
    :parameters (?pkg - package ?airplane - airplane ?loc - place)
    :precondition (and (in ?pkg ?airplane) (at ?airplane ?loc))
    :effect (and (not (in ?pkg ?airplane)) (at ?pkg ?loc)))
  (:action drive-truck
    :parameters (?truck - truck ?loc-from - place ?loc-to - place ?city - city)
    :precondition (and (at ?truck ?loc-from) (in-city ?loc-from ?city) (in-city ?loc-to ?city))
    :effect (and (not (at ?truck ?loc-from)) (at ?truck ?loc-to)))
  (:action fly-airplane
    :parameters (?airplane - airplane ?loc-from - airport ?loc-to - airport)
    :precondition (at ?airplane ?loc-from)
    :effect (and (not (at ?airplane ?loc-from)) (at ?airplane ?loc-to))))
"""


def _problem(name: str, domain: str, objects: list[str], init: list[str], goal: list[str]) -> str:
    lines = [f"(define (problem {name})", f"  (:domain {domain})"]
    lines.append("  (:objects " + " ".join(objects) + ")")
    lines.append("  (:init")
    lines += [f"    {a}" for a in init]
    lines.append("  )")
    lines.append("  (:goal (and")
    lines += [f"    {g}" for g in goal]
    lines.append("  ))")
    lines.append(")")
    return "\n".join(lines) + "\n"


def gen_gripper(n_balls: int) -> tuple[str, str]:
    """Gripper with rooms A and B, two grippers, and ``n_balls`` balls moved from A to B."""
    if n_balls < 1:
        raise ValueError("gripper needs at least one ball")
    balls = [f"ball{i}" for i in range(1, n_balls + 1)]
    objects = ["rooma", "roomb", "left", "right"] + balls
    init = ["(room rooma)", "(room roomb)", "(gripper left)", "(gripper right)"]
    init += [f"(ball {b})" for b in balls]
    init += ["(at-robby rooma)", "(free left)", "(free right)"]
    init += [f"(at {b} rooma)" for b in balls]
    goal = [f"(at {b} roomb)" for b in balls]
    return GRIPPER_DOMAIN, _problem(f"gripper-{n_balls}", "gripper-strips", objects, init, goal)


def lah(n: int, k: int) -> int:
    """Unsigned Lah number: ways to arrange n labelled blocks into k towers."""
    if n == k:
        return 1
    if k < 1 or k > n:
        return 0
    return math.comb(n - 1, k - 1) * math.factorial(n) // math.factorial(k)


def random_towers(blocks: list[str], rng: random.Random) -> list[list[str]]:
    """A uniformly random Blocksworld configuration (towers listed bottom-up)."""
    n = len(blocks)
    weights = [lah(n, k) for k in range(1, n + 1)]
    k = rng.choices(range(1, n + 1), weights=weights)[0]
    order = list(blocks)
    rng.shuffle(order)
    cuts = sorted(rng.sample(range(1, n), k - 1))
    towers = []
    prev = 0
    for c in cuts + [n]:
        towers.append(order[prev:c])
        prev = c
    return sorted(towers)


def _tower_atoms(towers: list[list[str]], with_clear: bool = True) -> list[str]:
    atoms = []
    for t in towers:
        atoms.append(f"(ontable {t[0]})")
        for below, above in zip(t, t[1:]):
            atoms.append(f"(on {above} {below})")
        if with_clear:
            atoms.append(f"(clear {t[-1]})")
    return atoms


def gen_blocksworld(n_blocks: int | str, seed: int = 0, ops: int = 4) -> tuple[str, str]:
    """Random Blocksworld instance, or the fixed ``"bw-para"`` three-block task."""
    if ops not in (3, 4):
        raise ValueError("ops must be 3 or 4")
    domain_text = BLOCKSWORLD_DOMAIN if ops == 4 else BLOCKSWORLD3_DOMAIN
    domain_name = "blocksworld" if ops == 4 else "blocksworld-3ops"
    hand = ["(handempty)"] if ops == 4 else []
    if n_blocks == "bw-para":
        init = _tower_atoms([["a"], ["b"], ["c"]]) + hand
        goal = ["(on b c)", "(on a b)"]
        return domain_text, _problem("bw-para", domain_name, ["a", "b", "c"], init, goal)
    n = int(n_blocks)
    if n < 2:
        raise ValueError("blocksworld needs at least two blocks")
    rng = random.Random(seed)
    blocks = [f"b{i}" for i in range(1, n + 1)]
    start = random_towers(blocks, rng)
    target = random_towers(blocks, rng)
    init = _tower_atoms(start) + hand
    goal = [a for a in _tower_atoms(target, with_clear=False) if a.startswith("(on ")]
    if not goal:
        goal = _tower_atoms(target, with_clear=False)
    name = f"bw{ops}-{n}-s{seed}"
    return domain_text, _problem(name, domain_name, blocks, init, goal)


def gen_logistics(cities: int, pkgs: int, seed: int = 0) -> tuple[str, str]:
    """Each city has an airport and one other location plus one truck; one airplane."""
    if cities < 1 or pkgs < 1:
        raise ValueError("logistics needs at least one city and one package")
    rng = random.Random(seed)
    objects, init = [], []
    places = []
    for c in range(1, cities + 1):
        city, ap, loc, truck = f"city{c}", f"apt{c}", f"loc{c}", f"truck{c}"
        objects += [f"{city} - city", f"{ap} - airport", f"{loc} - location", f"{truck} - truck"]
        init += [f"(in-city {ap} {city})", f"(in-city {loc} {city})"]
        init.append(f"(at {truck} {rng.choice([ap, loc])})")
        places += [ap, loc]
    objects.append("plane1 - airplane")
    init.append(f"(at plane1 apt{rng.randint(1, cities)})")
    goal = []
    for p in range(1, pkgs + 1):
        objects.append(f"pkg{p} - package")
        init.append(f"(at pkg{p} {rng.choice(places)})")
        goal.append(f"(at pkg{p} {rng.choice(places)})")
    name = f"logistics-{cities}-{pkgs}-s{seed}"
    return LOGISTICS_DOMAIN, _problem(name, "logistics-strips", objects, init, goal)
