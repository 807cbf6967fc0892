#!/usr/bin/env python3
"""Emit data/lexicon.tsv from the curated term lists below.

Each category lists specific terms (high idf), general terms (medium idf)
and bigrams. Terms shared between categories are declared in SHARED with
explicit per-category weights. Re-run after editing; output is sorted.
"""
import os
import sys

SPECIFIC_IDF = 4.2
GENERAL_IDF = 2.6
BIGRAM_IDF = 5.1

TERMS = {
    "adult": dict(
        specific="porn pornography xxx erotic erotica nsfw nude nudity stripper escort escorts camgirl fetish hentai",
        general="explicit sexy lingerie mature",
        bigrams="adult content adult video adult site sex toys live cams",
    ),
    "agriculture": dict(
        specific="agriculture agricultural farming farmer farmers crops crop harvest tractor tractors livestock cattle irrigation fertilizer fertilizers pesticide pesticides agronomy dairy wheat maize soybean soybeans orchard",
        general="farm farms seeds soil yield barn",
        bigrams="crop rotation organic farming dairy farm grain prices farm equipment",
    ),
    "animals": dict(
        specific="wildlife species mammals mammal reptiles reptile amphibians predators predator habitat zoology elephants elephant tigers tiger whales whale wolves primates",
        general="animals animal zoo wild birds bird",
        bigrams="endangered species wild animals animal kingdom natural habitat marine life",
    ),
    "architecture": dict(
        specific="architecture architect architects architectural facade skyscraper skyscrapers gothic baroque modernist cathedral blueprint blueprints",
        general="building buildings design structure tower",
        bigrams="building design urban planning modern architecture gothic architecture landscape architecture",
    ),
    "arts & entertainment": dict(
        specific="movie movies film films cinema actor actress actors celebrity celebrities hollywood album albums concert concerts songs singer band bands musician opera theatre theater comics animation poetry novel novels painting paintings sculpture gallery oscars soundtrack",
        general="music entertainment show shows art artist artists star stars episode series festival",
        bigrams="box office music video red carpet tv series film festival video games art gallery pop star",
    ),
    "automotive": dict(
        specific="car cars vehicle vehicles automotive sedan suv suvs hatchback engine horsepower torque mpg dealership dealer convertible pickup motorcycle motorcycles hybrid tesla toyota honda bmw",
        general="driving drive driver wheels tires fuel",
        bigrams="test drive electric vehicle used cars car review fuel economy car dealer",
    ),
    "business": dict(
        specific="business businesses company companies corporate entrepreneur entrepreneurs startup startups revenue profit profits ceo executives merger acquisition shareholders marketing sales supply",
        general="management industry market customers clients strategy firm",
        bigrams="small business supply chain chief executive business plan market share annual report",
    ),
    "careers": dict(
        specific="careers career resume resumes recruiter recruiters hiring vacancy vacancies interview interviews internship internships salary salaries employer employers",
        general="jobs job employment work workplace hire",
        bigrams="job search job interview cover letter job openings career advice job market",
    ),
    "economics": dict(
        specific="economics economy economic economist economists inflation gdp recession unemployment deflation monetary fiscal macroeconomics microeconomics tariffs",
        general="growth trade policy prices demand",
        bigrams="interest rates central bank economic growth trade deficit labor market supply demand",
    ),
    "education": dict(
        specific="education school schools student students teacher teachers university universities college colleges classroom curriculum tuition scholarship scholarships homework exam exams lecture professor professors academic",
        general="learning learn study courses course degree class",
        bigrams="high school online courses student loans college admissions distance learning",
    ),
    "family & parenting": dict(
        specific="parenting parent parents toddler toddlers newborn newborns pregnancy pregnant babies baby kids childcare motherhood fatherhood nanny adoption",
        general="family families children child mom dad mother father",
        bigrams="baby names stay home working mothers teen parenting family life",
    ),
    "fashion": dict(
        specific="fashion dresses dress runway designer designers couture handbag handbags jewelry shoes sneakers outfit outfits apparel boutique vogue",
        general="style styles wear clothing clothes trends trendy beauty",
        bigrams="fashion week street style spring collection fashion trends haute couture",
    ),
    "folklore": dict(
        specific="folklore folktale folktales legend legends myth myths mythology fairy fairies dragons dragon goblin trolls witchcraft superstition superstitions",
        general="tale tales ancient stories spirits",
        bigrams="fairy tale fairy tales folk tales greek mythology urban legend",
    ),
    "food & drink": dict(
        specific="recipe recipes cooking cook chef chefs restaurant restaurants cuisine baking bake dessert desserts ingredients wine beer cocktail cocktails coffee pasta vegan",
        general="food foods dinner lunch breakfast taste kitchen meal meals drinks",
        bigrams="easy recipes olive oil red wine dinner ideas healthy recipes food drink",
    ),
    "health & fitness": dict(
        specific="health medical medicine diabetes cancer disease diseases symptoms symptom treatment patients patient doctor doctors hospital clinical therapy vaccine vaccines cardiology nutrition fitness workout workouts asthma arthritis insulin dieting obesity cholesterol depression",
        general="healthy diet exercise weight pain care body",
        bigrams="heart disease weight loss blood pressure mental health side effects breast cancer health care type diabetes",
    ),
    "history": dict(
        specific="history historical historian historians medieval ancient empire empires dynasty archaeology archaeologist renaissance victorian pharaoh pharaohs colonial centuries",
        general="century war past era kings",
        bigrams="world war civil war roman empire ancient egypt cold war middle ages",
    ),
    "hobbies & interests": dict(
        specific="hobby hobbies knitting crochet gardening photography camping fishing hiking crafts diy woodworking collecting scrapbooking puzzles chess",
        general="garden camera craft tips outdoor",
        bigrams="board games home garden bird watching model trains arts crafts",
    ),
    "home": dict(
        specific="furniture interior decor decorating renovation remodeling kitchen bathroom bedroom sofa appliances plumbing cleaning mattress",
        general="home house room rooms living",
        bigrams="home improvement interior design living room home decor home depot",
    ),
    "law": dict(
        specific="law lawyer lawyers attorney attorneys court courts judge judges lawsuit lawsuits legal litigation verdict statute plaintiff defendant",
        general="rights case ruling trial justice",
        bigrams="supreme court law firm legal advice criminal law court ruling",
    ),
    "military": dict(
        specific="military army navy troops soldier soldiers veterans veteran pentagon missile missiles artillery battalion warfare defense defence airforce marines",
        general="forces war weapons combat",
        bigrams="armed forces air force special forces military base national guard",
    ),
    "news": dict(
        specific="breaking headlines newsroom journalist journalists correspondent reporters",
        general="news report reported today latest update",
        bigrams="breaking news news today latest news top stories press conference",
    ),
    "personal finance": dict(
        specific="banking bank banks mortgage mortgages loan loans credit debt savings retirement pension investing investment investments stocks bonds insurance tax taxes budget budgeting cryptocurrency bitcoin",
        general="money finance financial pay income",
        bigrams="credit card credit score personal finance retirement planning interest rate stock market savings account",
    ),
    "pets": dict(
        specific="pets pet dog dogs puppy puppies cat cats kitten kittens veterinarian vet grooming leash aquarium hamster breed breeds",
        general="food toys training care",
        bigrams="dog food cat litter pet care dog training pet insurance",
    ),
    "philosophy": dict(
        specific="philosophy philosopher philosophers ethics metaphysics epistemology existentialism stoicism plato aristotle kant nietzsche socrates logic",
        general="moral truth reason mind",
        bigrams="free speech moral philosophy meaning life critical thinking",
    ),
    "politics": dict(
        specific="politics political election elections president senator senate congress parliament campaign vote voters voting democrats republicans legislation minister governor ballot",
        general="government policy party leaders debate",
        bigrams="white house prime minister election results foreign policy political party",
    ),
    "real estate": dict(
        specific="realestate realtor realtors apartment apartments condo condos listing listings rent rental rentals homebuyers landlord tenant tenants property properties",
        general="homes housing sale buy",
        bigrams="real estate homes sale property prices housing market estate agent",
    ),
    "religion": dict(
        specific="religion religious church churches bible scripture prayer prayers god faith christian christianity islam muslim quran mosque jewish judaism torah synagogue buddhism buddhist hindu pastor priest worship sermon spiritual",
        general="holy belief believers soul",
        bigrams="bible study holy spirit sunday service catholic church prayer request",
    ),
    "science": dict(
        specific="science scientific scientist scientists research physics chemistry biology astronomy quantum molecule molecules genome genetics laboratory experiment experiments nasa telescope evolution",
        general="study studies theory data discovery",
        bigrams="climate change solar system research team black hole peer reviewed",
    ),
    "society": dict(
        specific="society social community communities activism charity volunteers nonprofit immigration equality diversity discrimination dating relationships wedding weddings",
        general="people culture public life",
        bigrams="social issues human rights civil rights gender equality online dating",
    ),
    "sports": dict(
        specific="sports football soccer basketball baseball tennis golf hockey cricket rugby olympics championship tournament league playoffs coach athlete athletes nba nfl fifa stadium goalkeeper quarterback",
        general="game games team teams season match player players win",
        bigrams="world cup final score premier league super bowl grand slam transfer news",
    ),
    "technology & computing": dict(
        specific="technology software hardware computer computers computing programming developer developers smartphone smartphones laptop laptops internet app apps android iphone linux windows cloud cybersecurity algorithm algorithms javascript python processor gadget gadgets",
        general="tech digital online device devices data code",
        bigrams="machine learning artificial intelligence open source operating system data center social media web browser",
    ),
    "travel": dict(
        specific="travel traveling travelling tourism tourist tourists hotel hotels flight flights airline airlines airport vacation vacations destination destinations resort resorts backpacking itinerary passport cruise",
        general="trip trips tour tours beach visit",
        bigrams="travel guide things do travel tips road trip cheap flights hotel deals",
    ),
}

# Terms deliberately attached to more than one category.
SHARED = {
    "insurance": (3.4, {"personal finance": 1.0, "automotive": 0.3, "health & fitness": 0.3}),
    "health insurance": (5.1, {"health & fitness": 0.6, "personal finance": 0.8}),
    "car insurance": (5.1, {"automotive": 0.7, "personal finance": 0.8}),
    "pet insurance": (5.1, {"pets": 1.0, "personal finance": 0.5}),
    "war": (2.4, {"history": 0.8, "military": 1.0, "politics": 0.3}),
    "game": (2.0, {"sports": 0.8, "arts & entertainment": 0.5, "hobbies & interests": 0.3}),
    "games": (2.0, {"sports": 0.6, "arts & entertainment": 0.6, "hobbies & interests": 0.4}),
    "design": (2.2, {"architecture": 0.7, "arts & entertainment": 0.4, "home": 0.4, "fashion": 0.3}),
    "kitchen": (3.0, {"home": 0.8, "food & drink": 0.6}),
    "food": (2.4, {"food & drink": 1.0, "pets": 0.2}),
    "diet": (2.8, {"health & fitness": 1.0, "food & drink": 0.4}),
    "nutrition": (3.8, {"health & fitness": 1.0, "food & drink": 0.4}),
    "care": (1.6, {"health & fitness": 0.6, "pets": 0.3, "family & parenting": 0.3}),
    "training": (2.0, {"pets": 0.4, "sports": 0.5, "careers": 0.4}),
    "toys": (2.6, {"pets": 0.5, "family & parenting": 0.6}),
    "market": (2.2, {"business": 0.7, "economics": 0.6, "personal finance": 0.4}),
    "prices": (2.2, {"economics": 0.8, "personal finance": 0.4, "real estate": 0.3}),
    "policy": (2.2, {"politics": 0.8, "economics": 0.5}),
    "study": (2.0, {"education": 0.7, "science": 0.7}),
    "ancient": (3.0, {"history": 1.0, "folklore": 0.5}),
    "data": (1.8, {"technology & computing": 0.7, "science": 0.5}),
    "wine": (4.0, {"food & drink": 1.0}),
    "homes": (2.8, {"real estate": 1.0, "home": 0.5}),
    "vet": (4.0, {"pets": 1.0, "military": 0.2}),
    "veterans": (4.2, {"military": 1.0, "society": 0.2}),
    "stress": (3.2, {"health & fitness": 1.0}),
    "weight": (2.6, {"health & fitness": 1.0}),
    "dating": (4.2, {"society": 1.0, "adult": 0.2}),
    "charity": (4.2, {"society": 1.0, "religion": 0.2}),
    "spiritual": (4.2, {"religion": 1.0, "philosophy": 0.3}),
    "ethics": (4.2, {"philosophy": 1.0, "law": 0.2}),
    "evolution": (4.2, {"science": 1.0, "animals": 0.3}),
    "wildlife": (4.2, {"animals": 1.0, "travel": 0.2}),
    "beach": (2.6, {"travel": 1.0}),
    "photography": (4.2, {"hobbies & interests": 1.0, "arts & entertainment": 0.4}),
    "cloud": (3.4, {"technology & computing": 1.0}),
    "windows": (3.0, {"technology & computing": 0.8, "home": 0.3}),
}


def main(out_path):
    entries = {}
    for cat, groups in TERMS.items():
        for term in groups["specific"].split():
            entries.setdefault(term, (SPECIFIC_IDF, {}))[1][cat] = 1.0
        for term in groups["general"].split():
            entries.setdefault(term, (GENERAL_IDF, {}))[1][cat] = 0.8
        words = groups["bigrams"].split()
        if len(words) % 2:
            raise SystemExit(f"odd bigram word count in {cat}")
        for i in range(0, len(words), 2):
            term = f"{words[i]} {words[i + 1]}"
            entries.setdefault(term, (BIGRAM_IDF, {}))[1][cat] = 1.0
    for term, (idf, weights) in SHARED.items():
        entries[term] = (idf, dict(weights))
    with open(out_path, "w", encoding="utf-8") as f:
        f.write("# <term>\t<idf>\t<category>:<weight>[,<category>:<weight>...]\n")
        f.write("# Curated English lexicon; unigrams and bigrams, lowercase.\n")
        for term in sorted(entries):
            idf, weights = entries[term]
            cats = ",".join(f"{c}:{w:g}" for c, w in sorted(weights.items()))
            f.write(f"{term}\t{idf:g}\t{cats}\n")
    print(f"{len(entries)} terms -> {out_path}")


if __name__ == "__main__":
    here = os.path.dirname(os.path.abspath(__file__))
    main(sys.argv[1] if len(sys.argv) > 1 else os.path.join(here, "..", "data", "lexicon.tsv"))
