"""Deterministic synthetic bibliographic records.

The generator assembles records from fixed name/topic pools and venue/title
templates. Venue strings deliberately lean on high-frequency venue words
(Journal, Conference, Proceedings, Transactions, ...) so that frequency
analyses of venue-focused masking have signal at small corpus sizes.

Two content pools exist: ``base`` and ``heldout``. They share venue and
title templates (so structural patterns transfer) but use disjoint family
names and topic words. Building the large generated corpus from ``base``
and the small task corpus from ``heldout`` yields a realistic vocabulary
gap between the two datasets.
"""

import random

from .ingest import BibRecord, PageRange, PersonName

FAMILY_BASE = (
    "Anderson", "Baker", "Chen", "Davis", "Evans", "Fischer", "Garcia",
    "Hansen", "Ivanov", "Johnson", "Kumar", "Larsen", "Martin", "Nguyen",
    "Olsen", "Patel", "Quinn", "Rossi", "Schmidt", "Tanaka", "Ueda",
    "Varga", "Wagner", "Xu", "Yamada", "Zhang", "Ahmed", "Bauer", "Costa",
    "Dubois", "Eriksson", "Fernandez", "Gupta", "Hoffmann", "Ito",
    "Jensen", "Kowalski", "Lindberg", "Moreau", "Novak", "Ortega",
    "Peterson", "Ramirez", "Sato", "Thompson", "Ullman", "Vasquez",
    "Weber", "Yilmaz", "Zimmermann", "Adler", "Brandt", "Carlsson",
    "Duarte", "Engel", "Fontaine", "Graham", "Huber", "Inoue", "Jansen",
    "Keller", "Lombardi", "Meyer", "Nakamura", "Brennan",
)

FAMILY_HELDOUT = (
    "Abbott", "Bianchi", "Cervantes", "Dalton", "Eastwood", "Falkner",
    "Giordano", "Holloway", "Iqbal", "Jablonski", "Kaplan", "Lozano",
    "Mercer", "Nystrom", "Oliveira", "Pavlov", "Quintero", "Rutherford",
    "Salazar", "Thorne", "Ulrich", "Ventura", "Whitfield", "Xiong",
    "Yoshida", "Zielinski", "Archer", "Bellamy", "Calloway", "Donovan",
    "Ellington", "Fairbanks", "Galloway", "Hathaway", "Ingram",
    "Jennings", "Kirkland", "Lancaster", "Mansfield", "Northrop",
    "Osborne", "Prescott", "Quigley", "Redfield", "Sheffield",
    "Tremblay", "Underwood", "Vanderberg", "Wexford", "Yarrow",
)

# Given names appear only as initials after author formatting, so one shared
# pool is fine. Mixed forms exercise the initials rules.
GIVEN = (
    "A.", "B", "C. E.", "D. M.", "Elena", "F", "G. H.", "Miriam", "J",
    "K. L.", "Nadia", "P.", "R. S.", "Tomas", "V", "W. B.", "Yuki", "Z.",
    "Hannah", "L. A.", "Marco", "S", "Ingrid", "T. J.", "Omar", "Petra",
)

TOPICS_BASE = (
    "Network", "Quantum", "Learning", "Optimization", "Statistical",
    "Inference", "Graph", "Signal", "Processing", "Vision", "Language",
    "Speech", "Robotics", "Control", "Systems", "Theory", "Algebra",
    "Geometry", "Topology", "Analysis", "Probability", "Stochastic",
    "Dynamics", "Fluid", "Plasma", "Photonics", "Semiconductor",
    "Materials", "Polymer", "Catalysis", "Genomics", "Proteomics",
    "Neuroscience", "Cognitive", "Behavioral", "Ecology", "Evolution",
    "Microbial", "Cellular", "Molecular", "Clinical", "Epidemiology",
    "Immunology", "Oncology", "Cardiology", "Surgical", "Economic",
    "Financial", "Monetary", "Labor", "Trade", "Industrial",
    "Agricultural", "Environmental", "Climate", "Ocean", "Atmospheric",
    "Geological", "Seismic", "Planetary", "Stellar", "Galactic",
    "Cosmology", "Particle", "Nuclear", "Atomic", "Chemical", "Thermal",
    "Mechanical", "Structural", "Electrical", "Magnetic", "Optical",
    "Acoustic", "Digital", "Parallel", "Distributed", "Secure",
    "Wireless", "Mobile", "Embedded", "Software", "Data", "Information",
    "Knowledge", "Decision", "Energy", "Power", "Transport",
)

TOPICS_HELDOUT = (
    "Bayesian", "Spectral", "Kernel", "Manifold", "Convex", "Sparse",
    "Tensor", "Entropy", "Coding", "Cryptographic", "Compiler",
    "Database", "Semantic", "Syntactic", "Phonetic", "Auditory",
    "Visual", "Sensor", "Actuator", "Haptic", "Biomedical",
    "Pharmaceutical", "Metabolic", "Genetic", "Epigenetic", "Viral",
    "Bacterial", "Fungal", "Botanical", "Zoological", "Marine",
    "Coastal", "Arctic", "Tropical", "Urban", "Rural", "Demographic",
    "Sociological", "Political", "Legal", "Ethical", "Historical",
    "Linguistic", "Literary", "Musical", "Architectural", "Ceramic",
    "Composite", "Crystalline", "Amorphous", "Superconducting",
    "Ferroelectric", "Photovoltaic", "Electrochemical", "Combustion",
    "Turbulent", "Laminar", "Granular", "Colloidal", "Interfacial",
)

# Venue templates; {0}/{1} are topic words. High-frequency venue words are
# spread across templates so each shows up often in any sizable corpus.
VENUE_TEMPLATES = (
    "Journal of {0} {1}",
    "International Journal of {0} Research",
    "Proceedings of the International Conference on {0} and {1}",
    "Proceedings of the {0} {1} Symposium",
    "IEEE Transactions on {0} {1}",
    "ACM Transactions on {0} Systems",
    "Annals of {0} {1}",
    "{0} and {1} Letters",
    "Advances in {0} {1}",
    "Annual Review of {0} {1}",
    "Conference on {0} {1} Applications",
    "{0} Research Quarterly",
)

# Title templates; topic words are lowercased inside titles (sentence case),
# which keeps capitalization a venue-side surface cue.
TITLE_TEMPLATES = (
    "A {0} approach to {1} {2}",
    "On the {0} of {1} {2}",
    "{0} {1} with {2} methods",
    "Towards {0} {1}",
    "The role of {0} in {1} {2}",
    "{0} models for {1} {2}",
    "Efficient {0} {1} under {2} constraints",
    "A survey of {0} {1}",
    "{0} analysis of {1} {2}",
    "Measuring {0} {1} at scale",
)

DISCIPLINES = ("cs", "math", "bio", "med", "phys", "econ")


def _sentence_case(text: str) -> str:
    return text[0].upper() + text[1:] if text else text


def _make_title(rng: random.Random, topics: tuple[str, ...]) -> str:
    template = rng.choice(TITLE_TEMPLATES)
    slots = template.count("{")
    words = [w.lower() for w in rng.sample(topics, slots)]
    return _sentence_case(template.format(*words))


def _make_venue(rng: random.Random, topics: tuple[str, ...]) -> str:
    template = rng.choice(VENUE_TEMPLATES)
    slots = template.count("{")
    return template.format(*rng.sample(topics, slots))


def make_records(count: int, seed: int, pool: str = "base") -> list[BibRecord]:
    """Generate `count` records deterministically from the named pool."""
    if pool == "base":
        families, topics = FAMILY_BASE, TOPICS_BASE
    elif pool == "heldout":
        families, topics = FAMILY_HELDOUT, TOPICS_HELDOUT
    else:
        raise ValueError(f"unknown pool {pool!r} (expected 'base' or 'heldout')")

    rng = random.Random(seed)
    records = []
    for _ in range(count):
        n_authors = rng.choices((1, 2, 3, 4), weights=(30, 35, 25, 10))[0]
        authors = tuple(
            PersonName(rng.choice(families), rng.choice(GIVEN))
            for _ in range(n_authors)
        )
        volume = str(rng.randint(1, 120)) if rng.random() < 0.85 else None
        issue = (
            str(rng.randint(1, 12)) if volume and rng.random() < 0.70 else None
        )
        pages = None
        if rng.random() < 0.75:
            first = rng.randint(1, 980)
            last = first if rng.random() < 0.05 else first + rng.randint(1, 45)
            pages = PageRange(str(first), str(last))
        records.append(
            BibRecord(
                authors=authors,
                title=_make_title(rng, topics),
                venue=_make_venue(rng, topics),
                year=rng.randint(1960, 2024),
                volume=volume,
                issue=issue,
                pages=pages,
                discipline=rng.choice(DISCIPLINES),
            )
        )
    return records
