#!/usr/bin/env python3
"""Independent reference implementation of the replay pipeline and report.

Reads the data directory, a policy document and a ReplayRecord log, then
writes the BrowsingEvent stream (JSONL) and the aggregate report (JSON)
that the Rust implementation must reproduce byte for byte.

Nothing here is shared with the Rust code; the rules are re-derived from
the written behaviour:

  tokens      lowercase, split on non-alphanumeric, drop 1-char tokens and stopwords
  n-grams     unigrams + adjacent bigrams, raw counts per field; keywords per phrase
  score       fields url,title,keywords,body (weights 3,4,5,1); terms in sorted
              order; categories in sorted order; s[c] += ((fw*tf)*idf)*w
  select      T = 0.3*(max - sum/32) with sum in category-name order;
              score > T; top 3 by (-score, name)
  categorize  override > cache(500, LRU) > declared tag > domain list > lexicon > none
  policy      url policy > blocked-category intersection > allow
  tracker     registrable domains under the bundled suffix list; a third party is a
              tracker once seen on >= 3 distinct first parties (recorded first)

Usage: replay_reference.py <data_dir> <policy.json> <log.jsonl> <events_out> <report_out>
"""
import hashlib
import ipaddress
import json
import math
import sys
from collections import OrderedDict

ALPHA = 0.3
CACHE_CAPACITY = 500
FIELD_WEIGHTS = [("url", 3.0), ("title", 4.0), ("keywords", 5.0), ("body", 1.0)]
TOP_TRACKERS = 10
TOP_AD_DOMAINS = 40


def data_lines(path):
    with open(path, encoding="utf-8") as f:
        for line in f:
            line = line.rstrip("\n").rstrip("\r")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            yield line


# ---------------------------------------------------------------- suffix list

class SuffixList:
    def __init__(self, path):
        self.rules = set()
        self.wildcards = set()
        self.exceptions = set()
        with open(path, encoding="utf-8") as f:
            for raw in f:
                line = raw.strip()
                if not line or line.startswith("//"):
                    continue
                rule = line.split()[0].lower()
                if rule.startswith("!"):
                    self.exceptions.add(rule[1:])
                elif rule.startswith("*."):
                    self.wildcards.add(rule[2:])
                else:
                    self.rules.add(rule)

    def suffix_len(self, labels):
        # Number of labels in the public suffix of `labels`.
        n = len(labels)
        best = 1  # implicit "*" rule
        for i in range(n):
            cand = ".".join(labels[i:])
            if cand in self.exceptions:
                return n - i - 1
        for i in range(n):
            cand = ".".join(labels[i:])
            count = n - i
            if cand in self.rules:
                best = max(best, count)
            if i >= 1 and ".".join(labels[i:]) in self.wildcards:
                best = max(best, count + 1)
        return best

    def registrable(self, host):
        host = host.lower().rstrip(".")
        if host.startswith("[") or ":" in host:
            return host
        try:
            ipaddress.IPv4Address(host)
            return host
        except ValueError:
            pass
        labels = host.split(".")
        if len(labels) < 2:
            return host
        k = self.suffix_len(labels)
        if k >= len(labels):
            return host
        return ".".join(labels[-(k + 1):])


# ---------------------------------------------------------------- urls

def normalize_url(url):
    if not isinstance(url, str) or "://" not in url:
        return None
    scheme, rest = url.split("://", 1)
    if not scheme or not all(c.isalnum() or c in "+-." for c in scheme):
        return None
    scheme = scheme.lower()
    rest = rest.split("#", 1)[0]
    cut = len(rest)
    for sep in "/?":
        p = rest.find(sep)
        if p != -1:
            cut = min(cut, p)
    authority, tail = rest[:cut], rest[cut:]
    if not authority or " " in authority:
        return None
    host, port = authority, None
    if ":" in authority:
        host, port = authority.rsplit(":", 1)
    host = host.lower()
    if not host:
        return None
    if port is not None:
        if port == "" or (scheme == "https" and port == "443") or (scheme == "http" and port == "80"):
            port = None
    if not tail.startswith("/"):
        tail = "/" + tail
    return f"{scheme}://{host}{':' + port if port else ''}{tail}"


def url_host(url):
    n = normalize_url(url)
    if n is None:
        return None
    authority = n.split("://", 1)[1].split("/", 1)[0].split("?", 1)[0]
    return authority.rsplit(":", 1)[0] if ":" in authority else authority


# ---------------------------------------------------------------- text

class Text:
    def __init__(self, stopwords):
        self.stop = stopwords

    def tokens(self, text):
        out, cur = [], []
        for ch in text.lower():
            if ch.isalnum():
                cur.append(ch)
            else:
                if cur:
                    out.append("".join(cur))
                cur = []
        if cur:
            out.append("".join(cur))
        return [t for t in out if len(t) >= 2 and t not in self.stop]

    def ngrams(self, text, counts):
        toks = self.tokens(text)
        for t in toks:
            counts[t] = counts.get(t, 0) + 1
        for a, b in zip(toks, toks[1:]):
            bg = a + " " + b
            counts[bg] = counts.get(bg, 0) + 1


# ---------------------------------------------------------------- categorizer

class Categorizer:
    def __init__(self, data_dir, psl):
        self.taxonomy = list(data_lines(f"{data_dir}/taxonomy.txt"))
        self.top = set(self.taxonomy)
        stop = set()
        for line in data_lines(f"{data_dir}/stopwords.txt"):
            stop.update(line.split())
        self.text = Text(stop)
        self.domains = {}
        for line in data_lines(f"{data_dir}/domains.tsv"):
            key, cats = line.split("\t")
            self.domains[key.strip().lower()] = sorted(set(c.strip() for c in cats.split(",")))
        self.lexicon = {}
        for line in data_lines(f"{data_dir}/lexicon.tsv"):
            term, idf, weights = line.split("\t")
            ws = {}
            for part in weights.split(","):
                cat, w = part.rsplit(":", 1)
                ws[cat] = float(w)
            self.lexicon[term] = (float(idf), ws)
        self.psl = psl
        self.cache = OrderedDict()

    def scores(self, url, title, keywords, body):
        fields = {"url": [url], "title": [title], "keywords": keywords, "body": [body]}
        scores = {}
        for name, fw in FIELD_WEIGHTS:
            counts = {}
            for text in fields[name]:
                self.text.ngrams(text, counts)
            for term in sorted(counts):
                entry = self.lexicon.get(term)
                if entry is None:
                    continue
                idf, ws = entry
                tf = float(counts[term])
                for cat in sorted(ws):
                    scores[cat] = scores.get(cat, 0.0) + fw * tf * idf * ws[cat]
        return scores

    def select(self, scores):
        if not any(v > 0.0 for v in scores.values()):
            return None
        mx = max(scores.values())
        total = 0.0
        for cat in sorted(scores):
            total += scores[cat]
        mean = total / len(self.taxonomy)
        t = ALPHA * (mx - mean)
        picked = sorted((c for c, v in scores.items() if v > t), key=lambda c: (-scores[c], c))
        if not picked:
            picked = sorted(scores, key=lambda c: (-scores[c], c))[:1]
        return picked[:3]

    def categorize(self, url, host, feats, overrides):
        if url in overrides:
            return overrides[url], "user-override"
        if url in self.cache:
            self.cache.move_to_end(url)
            return self.cache[url], "cache"
        result = None
        declared = feats.get("declaredCategory")
        if isinstance(declared, str) and declared.strip().lower() in self.top:
            result = ([declared.strip().lower()], "declared-tag")
        if result is None:
            cats = self.domains.get(host)
            if cats is None:
                cats = self.domains.get(self.psl.registrable(host))
            if cats is not None:
                result = (cats, "domain-list")
        if result is None:
            picked = self.select(self.scores(url, feats.get("title", ""), feats.get("keywords", []),
                                             feats.get("body", "")))
            if picked:
                result = (picked, "lexicon")
        if result is None:
            return [], "fallback-uncategorized"
        self.cache[url] = result[0]
        if len(self.cache) > CACHE_CAPACITY:
            self.cache.popitem(last=False)
        return result


# ---------------------------------------------------------------- replay

def page_hash(url):
    return hashlib.sha256(url.encode("utf-8")).digest()[:8].hex()


def replay(data_dir, policy, log_path):
    psl = SuffixList(f"{data_dir}/public_suffix_snapshot.dat")
    cat = Categorizer(data_dir, psl)
    allowed = set(l.strip().lower() for l in data_lines(f"{data_dir}/allowed_domains.txt"))
    blocked_cats = set(policy.get("blockedCategories", []))
    url_policies = {normalize_url(k): v for k, v in policy.get("urlPolicies", {}).items()}
    overrides = {normalize_url(k): v for k, v in policy.get("categoryOverrides", {}).items()}
    registry = {}
    events, malformed = [], 0
    with open(log_path, encoding="utf-8") as f:
        lines = f.read().split("\n")
    for lineno, line in enumerate(lines):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
        except ValueError:
            malformed += 1
            continue
        url = normalize_url(rec.get("page")) if isinstance(rec, dict) else None
        if url is None:
            malformed += 1
            continue
        if rec.get("html") is not None:
            raise SystemExit("reference does not parse html records")
        host = url_host(url)
        feats = rec.get("features") or {}
        cats, source = cat.categorize(url, host, feats, overrides)
        pol = url_policies.get(url)
        if pol is not None:
            verdict, reason = pol, "url-override"
        elif any(c in blocked_cats for c in cats):
            verdict, reason = "block", "category-match"
        else:
            verdict, reason = "allow", "default-allow"
        first = psl.registrable(host)
        third_parties, trackers, blocked = set(), set(), set()
        for sub in rec.get("subresources", []):
            third = psl.registrable(sub)
            if third == first:
                continue
            third_parties.add(third)
            registry.setdefault(third, set()).add(first)
            is_tracker = len(registry[third]) >= 3
            if is_tracker:
                trackers.add(third)
            if verdict == "block" and third not in allowed and is_tracker:
                blocked.add(third)
        iframes = []
        for u in rec.get("iframes", []):
            if u not in iframes:
                iframes.append(u)
        ev = OrderedDict()
        ev["timestamp"] = rec["ts"] if isinstance(rec.get("ts"), int) else lineno
        if isinstance(rec.get("client"), str):
            ev["client"] = rec["client"]
        ev["pageHash"] = page_hash(url)
        ev["categories"] = list(cats)
        ev["source"] = source
        ev["verdict"] = verdict
        ev["reason"] = reason
        ev["thirdPartyDomains"] = sorted(third_parties)
        ev["trackerDomains"] = sorted(trackers)
        ev["blockedDomains"] = sorted(blocked)
        ev["iframeUrls"] = iframes
        events.append(ev)
    return cat.taxonomy, events, malformed


# ---------------------------------------------------------------- report

def mean_std(xs):
    if not xs:
        return 0.0, 0.0
    total = 0.0
    for x in xs:
        total += float(x)
    mean = total / len(xs)
    var = 0.0
    for x in xs:
        d = float(x) - mean
        var += d * d
    return mean, math.sqrt(var / len(xs))


def pct(a, b):
    return 100.0 * a / b if b else 0.0


def build_report(taxonomy, events, ad_domains, psl):
    def ads_of(ev):
        total = blocked = 0
        doms = []
        for u in ev["iframeUrls"]:
            h = url_host(u)
            if h is None:
                continue
            d = psl.registrable(h)
            if d in ad_domains:
                total += 1
                doms.append(d)
        if ev["verdict"] == "block":
            blocked = total
        return total, blocked, doms

    def summary(evs):
        total = len(evs)
        distinct = len(set(e["pageHash"] for e in evs))
        blocked = sum(1 for e in evs if e["verdict"] == "block")
        ads_total = ads_blocked = 0
        for e in evs:
            t, b, _ = ads_of(e)
            ads_total += t
            ads_blocked += b
        open_pages = [e for e in evs if e["verdict"] != "block"]
        avg, std = mean_std([len(e["trackerDomains"]) for e in open_pages])
        distinct_trackers = len(set(d for e in open_pages for d in e["trackerDomains"]))
        return total, distinct, blocked, ads_total, ads_blocked, len(open_pages), avg, std, distinct_trackers

    per_cat = OrderedDict()
    for c in sorted(taxonomy):
        evs = [e for e in events if c in e["categories"]]
        t, d, b, at, ab, tp, avg, std, dt = summary(evs)
        row = OrderedDict()
        row["pagesTotal"] = t
        row["pagesDistinct"] = d
        row["pagesBlocked"] = b
        row["adsTotal"] = at
        row["adsBlocked"] = ab
        row["trackedPages"] = tp
        row["avgTrackersPerPage"] = avg
        row["stdTrackersPerPage"] = std
        row["distinctTrackers"] = dt
        per_cat[c] = row

    t, d, b, at, ab, tp, avg, std, dt = summary(events)
    tracker_counts = {}
    for e in events:
        if e["verdict"] == "block":
            continue
        for dom in e["trackerDomains"]:
            tracker_counts[dom] = tracker_counts.get(dom, 0) + 1
    ad_counts = {}
    for e in events:
        for dom in ads_of(e)[2]:
            ad_counts[dom] = ad_counts.get(dom, 0) + 1
    top_trackers = []
    for dom in sorted(tracker_counts, key=lambda k: (-tracker_counts[k], k))[:TOP_TRACKERS]:
        top_trackers.append(OrderedDict([("domain", dom), ("pages", tracker_counts[dom]),
                                         ("pct", pct(tracker_counts[dom], tp))]))
    top_ads = []
    for dom in sorted(ad_counts, key=lambda k: (-ad_counts[k], k))[:TOP_AD_DOMAINS]:
        top_ads.append(OrderedDict([("domain", dom), ("ads", ad_counts[dom]),
                                    ("pct", pct(ad_counts[dom], at))]))
    overall = OrderedDict()
    overall["pagesTotal"] = t
    overall["pagesDistinct"] = d
    overall["pagesBlocked"] = b
    overall["pctPagesBlocked"] = pct(b, t)
    overall["adsTotal"] = at
    overall["adsBlocked"] = ab
    overall["pctAdsBlocked"] = pct(ab, at)
    overall["trackedPages"] = tp
    overall["avgTrackers"] = avg
    overall["stdTrackers"] = std
    overall["distinctTrackers"] = dt
    overall["topTrackers"] = top_trackers
    overall["topAdDomains"] = top_ads
    report = OrderedDict()
    report["perCategory"] = per_cat
    report["overall"] = overall
    return report


# ---------------------------------------------------------------- json

def fmt_float(x):
    """Shortest round-trip formatting laid out the way serde_json prints f64."""
    if x == 0.0:
        return "-0.0" if math.copysign(1.0, x) < 0 else "0.0"
    neg = x < 0
    s = repr(abs(x))
    if "e" in s:
        mant, exp = s.split("e")
        exp = int(exp)
    else:
        mant, exp = s, 0
    ip, _, fp = mant.partition(".")
    digits = (ip + fp).lstrip("0")
    # value = 0.<digits> * 10**kk
    kk = len(ip) + exp if ip != "0" else exp - (len(fp) - len(fp.lstrip("0")))
    digits = digits.rstrip("0") or "0"
    n = len(digits)
    k = kk - n
    if 0 <= k and kk <= 16:
        out = digits + "0" * k + ".0"
    elif 0 < kk <= 16:
        out = digits[:kk] + "." + digits[kk:]
    elif -5 < kk <= 0:
        out = "0." + "0" * (-kk) + digits
    else:
        e = kk - 1
        exp_s = f"e+{e}" if e > 0 else f"e{e}"
        out = digits + exp_s if n == 1 else f"{digits[0]}.{digits[1:]}{exp_s}"
    return ("-" if neg else "") + out


def dump(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return fmt_float(v)
    if isinstance(v, str):
        return json.dumps(v, ensure_ascii=False)
    if isinstance(v, list):
        return "[" + ",".join(dump(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ",".join(json.dumps(k, ensure_ascii=False) + ":" + dump(x) for k, x in v.items()) + "}"
    raise TypeError(type(v))


def main(argv):
    if len(argv) == 2 and argv[1] == "--fmt-selftest":
        for line in sys.stdin:
            print(fmt_float(float.fromhex(line.strip())))
        return 0
    if len(argv) != 6:
        print(__doc__, file=sys.stderr)
        return 2
    data_dir, policy_path, log_path, events_out, report_out = argv[1:]
    with open(policy_path, encoding="utf-8") as f:
        policy = json.load(f)
    taxonomy, events, malformed = replay(data_dir, policy, log_path)
    psl = SuffixList(f"{data_dir}/public_suffix_snapshot.dat")
    ad_domains = set(l.strip().lower() for l in data_lines(f"{data_dir}/ad_domains.txt"))
    with open(events_out, "w", encoding="utf-8") as f:
        for ev in events:
            f.write(dump(ev) + "\n")
    with open(report_out, "w", encoding="utf-8") as f:
        f.write(dump(build_report(taxonomy, events, ad_domains, psl)) + "\n")
    print(f"{len(events)} events, {malformed} malformed", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
