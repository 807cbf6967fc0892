#!/usr/bin/env python3
"""Generate the synthetic replay log and the replay policy used by the golden test.

Deterministic: a fixed seed drives everything. Writes
  <out>/log.jsonl     ReplayRecord JSONL (~5,000 lines, a few malformed)
  <out>/policy.json   policy document applied during replay
"""
import json
import os
import random
import sys

SEED = 20160111
N_RECORDS = 5000

FILLER = (
    "read more about this story here and share it with friends the page was updated "
    "yesterday according several sources people said they think new things happen "
    "every week see also related links below click subscribe newsletter comments "
    "write reply sign login menu contact privacy terms cookies home page next previous"
).split()

# Topic vocabulary per category, drawn from the shipped lexicon plus some
# ordinary words that the lexicon does not know.
TOPICS = {
    "adult": "explicit erotic nude lingerie mature fetish adult content xxx sexy",
    "agriculture": "farming crops harvest tractor livestock irrigation farmers wheat dairy farm soil",
    "animals": "wildlife species habitat mammals predators elephants whales zoo birds animals",
    "architecture": "architecture architect facade skyscraper cathedral building design gothic structure",
    "arts & entertainment": "movie film actor album concert singer band festival music episode celebrity",
    "automotive": "car vehicle engine sedan horsepower dealership driving fuel tires hybrid",
    "business": "company startup revenue profit ceo marketing sales merger shareholders industry",
    "careers": "career resume recruiter hiring interview salary employer jobs internship",
    "economics": "economy inflation gdp recession unemployment monetary tariffs trade growth",
    "education": "school students teacher university college curriculum exam lecture learning",
    "family & parenting": "parenting toddler newborn pregnancy baby kids family children mom",
    "fashion": "fashion dress runway designer handbag shoes outfit style clothing",
    "folklore": "folklore legend myth mythology fairy dragon goblin tales superstition",
    "food & drink": "recipe cooking chef restaurant baking dessert ingredients wine pasta dinner",
    "health & fitness": "health diabetes cancer symptoms treatment doctor hospital therapy diet insulin",
    "history": "history medieval empire dynasty archaeology renaissance century war historian",
    "hobbies & interests": "hobby knitting gardening photography camping fishing hiking crafts chess",
    "home": "furniture interior decor renovation kitchen bathroom sofa appliances cleaning",
    "law": "law lawyer attorney court judge lawsuit legal litigation verdict",
    "military": "military army navy troops soldiers veterans missile artillery defense",
    "news": "breaking headlines journalist reporters latest news today update",
    "personal finance": "mortgage loan credit debt savings retirement investing stocks tax budget",
    "pets": "dog puppy cat kitten veterinarian grooming leash breed pets",
    "philosophy": "philosophy ethics metaphysics stoicism plato aristotle kant logic moral",
    "politics": "election president senator congress parliament campaign voters legislation ballot",
    "real estate": "apartment condo listing rent rental landlord tenant property housing",
    "religion": "church bible prayer god faith christian worship sermon scripture spiritual",
    "science": "science research physics chemistry biology astronomy genome laboratory experiment",
    "society": "community activism charity volunteers nonprofit equality diversity culture",
    "sports": "football soccer basketball tennis championship tournament league coach athletes",
    "technology & computing": "software computer programming developer smartphone laptop internet app cloud",
    "travel": "travel hotel flight airline airport vacation destination resort itinerary",
}
CATS = sorted(TOPICS)

# Domain-list publishers (in data/domains.tsv) and generic publishers that
# need the lexicon.
LISTED_SITES = [
    ("techcrunch.com", "technology & computing"), ("espn.com", "sports"),
    ("webmd.com", "health & fitness"), ("biblegateway.com", "religion"),
    ("imdb.com", "arts & entertainment"), ("allrecipes.com", "food & drink"),
    ("tripadvisor.com", "travel"), ("zillow.com", "real estate"),
    ("nerdwallet.com", "personal finance"), ("politico.com", "politics"),
    ("xvideos.com", "adult"), ("news.bbc.co.uk", "news"), ("lemonde.fr", "news"),
]

GENERIC_SUFFIXES = ["com", "net", "org", "co.uk", "fr", "de", "com.au", "io", "blog.com"]

TRACKERS = [
    "doubleclick.net", "google-analytics.com", "facebook.net", "googletagmanager.com",
    "googlesyndication.com", "scorecardresearch.com", "adnxs.com", "criteo.com",
    "quantserve.com", "rubiconproject.com", "pubmatic.com", "taboola.com",
    "outbrain.com", "amazon-adsystem.com", "bluekai.com", "demdex.net", "hotjar.com",
    "chartbeat.net", "newrelic.com", "twitter.com", "facebook.com", "addthis.com",
    "mathtag.com", "openx.net", "casalemedia.com", "teads.tv", "smartadserver.com",
    "weborama.fr", "gemius.pl", "xiti.com",
]
CDNS = ["gstatic.com", "googleapis.com", "cloudflare.com", "jsdelivr.net", "akamaihd.net",
        "fbcdn.net", "ytimg.com", "cloudfront.net"]
AD_IFRAME_HOSTS = ["tpc.googlesyndication.com", "ad.doubleclick.net", "s0.2mdn.net",
                   "ads.rubiconproject.com", "cdn.criteo.com", "widgets.outbrain.com",
                   "ads.pubmatic.com", "secure.adnxs.com", "ib.adnxs.com", "ad.weborama.fr"]
OTHER_IFRAME_HOSTS = ["www.youtube.com", "player.vimeo.com", "www.facebook.com",
                      "platform.twitter.com", "disqus.com"]


def words(rng, vocab, n):
    return [rng.choice(vocab) for _ in range(n)]


def make_site(rng, i):
    stem = "".join(rng.choice("abcdefghijklmnopqrstuvwxyz") for _ in range(rng.randint(5, 9)))
    suffix = rng.choice(GENERIC_SUFFIXES)
    domain = f"{stem}{i}.{suffix}"
    main = rng.choice(CATS)
    # Multi-topic publishers (news-like) mix categories per page.
    mixed = rng.random() < 0.3
    own_third = [f"{stem}img.net", f"{stem}-static.com"][: rng.randint(0, 2)]
    trackers = rng.sample(TRACKERS[: rng.choice([8, 15, 30])], rng.randint(0, 8))
    cdns = rng.sample(CDNS, rng.randint(0, 3))
    return dict(domain=domain, host=rng.choice(["www.", "", "m."]) + domain, main=main,
                mixed=mixed, own_third=own_third, trackers=trackers, cdns=cdns,
                declares=rng.random() < 0.1, listed=False)


def make_page(rng, site, j):
    cat = rng.choice(CATS) if site["mixed"] else site["main"]
    vocab = TOPICS[cat].split()
    slug = "-".join(words(rng, vocab, 2))
    path = f"/{slug}-{j}"
    if rng.random() < 0.2:
        path += f"?id={rng.randint(1, 99)}"
    title_words = words(rng, vocab, rng.randint(1, 3)) + words(rng, FILLER, rng.randint(0, 3))
    rng.shuffle(title_words)
    body = []
    for _ in range(rng.randint(2, 6)):
        sentence = words(rng, vocab, rng.randint(1, 4)) + words(rng, FILLER, rng.randint(4, 10))
        if rng.random() < 0.3:
            sentence += words(rng, TOPICS[rng.choice(CATS)].split(), 1)
        rng.shuffle(sentence)
        body.append(" ".join(sentence).capitalize() + ".")
    features = {"title": " ".join(title_words).title(), "body": " ".join(body)}
    if rng.random() < 0.5:
        features["keywords"] = words(rng, vocab, rng.randint(1, 4))
    if site["declares"]:
        features["declaredCategory"] = cat if rng.random() < 0.9 else "not a category"
    if rng.random() < 0.04:
        features = {"title": "", "body": " ".join(words(rng, FILLER, 12))}
        path = f"/item/{j}"
    return dict(url=f"https://{site['host']}{path}", features=features)


def subresources(rng, site):
    hosts = []
    for d in site["cdns"]:
        if rng.random() < 0.8:
            hosts.append(rng.choice(["", "cdn.", "ajax.", "fonts."]) + d)
    for d in site["own_third"]:
        hosts.append("img." + d)
    for d in site["trackers"]:
        if rng.random() < 0.85:
            hosts.append(rng.choice(["", "www.", "stats.", "pixel."]) + d)
    hosts.append("static." + site["domain"])
    rng.shuffle(hosts)
    return hosts


def iframes(rng):
    out = []
    for _ in range(rng.choice([0, 0, 1, 1, 2, 3])):
        if rng.random() < 0.75:
            host = rng.choice(AD_IFRAME_HOSTS)
            out.append(f"https://{host}/slot/{rng.randint(1000, 9999)}.html")
        else:
            host = rng.choice(OTHER_IFRAME_HOSTS)
            out.append(f"https://{host}/embed/{rng.randint(1000, 9999)}")
    return out


def main(out_dir):
    rng = random.Random(SEED)
    sites = [make_site(rng, i) for i in range(140)]
    for domain, cat in LISTED_SITES:
        s = make_site(rng, 0)
        s.update(domain=domain if domain.count(".") == 1 else domain.split(".", 1)[1],
                 host=domain if domain.count(".") > 1 else "www." + domain,
                 main=cat, mixed=False, declares=False, listed=True)
        sites.append(s)
    pages = {}
    for s in sites:
        pages[s["host"]] = [make_page(rng, s, j) for j in range(rng.randint(3, 25))]

    clients = ["alice", "bob", "carol", "dave", "erin"]
    weights = [rng.paretovariate(1.2) for _ in sites]
    lines = []
    recent = []
    for n in range(N_RECORDS):
        if recent and rng.random() < 0.25:
            site, page = rng.choice(recent[-40:])
        else:
            site = rng.choices(sites, weights)[0]
            page = rng.choice(pages[site["host"]])
            recent.append((site, page))
        url = page["url"]
        r = rng.random()
        if r < 0.03:
            url = url.replace("https://", "HTTPS://").replace(site["host"], site["host"].upper())
        elif r < 0.06:
            url += "#section-" + str(rng.randint(1, 5))
        elif r < 0.08:
            url = url.replace("https://" + site["host"], "https://" + site["host"] + ":443")
        rec = {"page": url, "html": None, "features": page["features"],
               "subresources": subresources(rng, site), "iframes": iframes(rng)}
        if rng.random() < 0.9:
            rec["client"] = rng.choice(clients)
        if rng.random() < 0.02:
            rec.pop("features")
        lines.append(json.dumps(rec, separators=(",", ":"), ensure_ascii=False))
        if rng.random() < 0.002:
            lines.append('{"page": "https://broken.example/', )
        if rng.random() < 0.002:
            lines.append(json.dumps({"page": "not a url", "subresources": []}))

    os.makedirs(out_dir, exist_ok=True)
    with open(os.path.join(out_dir, "log.jsonl"), "w", encoding="utf-8") as f:
        f.write("\n".join(lines) + "\n")

    # A few per-URL choices and recategorizations taken from generated pages.
    some = [p for s in sites if not s["listed"] for p in pages[s["host"]]]
    rng.shuffle(some)
    policy = {
        "blockedCategories": ["adult", "health & fitness", "politics", "religion"],
        "urlPolicies": {},
        "categoryOverrides": {},
    }
    for p in some[:6]:
        policy["urlPolicies"][p["url"]] = "allow"
    for p in some[6:10]:
        policy["urlPolicies"][p["url"]] = "block"
    policy["urlPolicies"]["https://www.webmd.com/"] = "allow"
    for p in some[10:14]:
        policy["categoryOverrides"][p["url"]] = ["religion"]
    for p in some[14:16]:
        policy["categoryOverrides"][p["url"]] = ["news", "sports"]
    with open(os.path.join(out_dir, "policy.json"), "w", encoding="utf-8") as f:
        json.dump(policy, f, indent=2, sort_keys=True)
        f.write("\n")
    print(f"{len(lines)} lines -> {out_dir}")


if __name__ == "__main__":
    here = os.path.dirname(os.path.abspath(__file__))
    default = os.path.join(here, "..", "crates", "trackwall", "tests", "fixtures", "replay")
    main(sys.argv[1] if len(sys.argv) > 1 else default)
