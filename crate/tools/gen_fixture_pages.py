#!/usr/bin/env python3
"""Write the hand-labeled HTML corpus used by the categorizer acceptance test.

Each page gets page boilerplate (nav, scripts, styles, footer) around a
hand-written article. labels.tsv maps file name -> page URL -> gold category.
Hosts are deliberately absent from data/domains.tsv so the lexicon decides.
"""
import html
import os
import sys

PAGES = [
    ("adult", "https://velvetnights.example/gallery/42", "Velvet Nights - Exclusive Gallery",
     "erotic, lingerie, adult content",
     "Members get access to our explicit erotic gallery. Browse thousands of nude photo sets and lingerie shoots, "
     "updated daily. This site contains adult content and is restricted to visitors over 18. Our mature models "
     "star in exclusive erotic video sessions."),
    ("adult", "https://hotcams.example/live", "Live Cams Tonight", "",
     "Watch live cams with the sexiest performers. Explicit shows, fetish rooms and private nude chats. "
     "Adult video on demand, xxx clips and erotic stories for verified adults."),
    ("agriculture", "https://fieldnotes.example/2024/harvest-report", "Harvest report: wheat yields up despite dry spring",
     "farming, wheat, harvest",
     "Farmers across the plains finished the wheat harvest this week. Despite a dry spring, irrigation and "
     "careful crop rotation kept yields close to the five year average. Livestock producers are watching feed "
     "prices, and several dairy farms have invested in new tractors and fertilizer spreaders."),
    ("agriculture", "https://growersguide.example/soil", "Soil health for small farms", "",
     "Healthy soil is the foundation of every farm. Cover crops, reduced tillage and organic farming methods "
     "build organic matter. Agronomy experts recommend testing soil before applying fertilizers or pesticides."),
    ("animals", "https://wildwatch.example/elephants", "Elephants return to the northern habitat", "wildlife, elephants",
     "Conservation teams report that elephants have returned to a protected habitat for the first time in "
     "decades. The region also supports predators such as wolves, and whales are seen along the coast. "
     "Protecting endangered species requires wildlife corridors between reserves."),
    ("architecture", "https://buildform.example/towers", "The new skyline: skyscraper design after 2020", "",
     "Architects are rethinking the skyscraper. The latest towers use timber structure and a double facade "
     "to cut energy use. Critics compare the building design to gothic cathedrals, with vertical lines and "
     "exposed structure. Modern architecture is again embracing ornament."),
    ("arts & entertainment", "https://screenbuzz.example/reviews/summer-blockbuster", "Review: the summer blockbuster everyone is talking about",
     "movie review, film, box office",
     "The film opens with a stunning set piece and never lets go. The lead actor delivers a career best "
     "performance, and the soundtrack by a famous band fills every scene. It topped the box office this "
     "weekend and critics already mention the Oscars. Cinema at its most entertaining."),
    ("arts & entertainment", "https://loudnotes.example/album-of-the-year", "Album of the year: our picks", "music, albums",
     "Our music editors pick the albums that defined the year. From a debut singer to veteran bands on a "
     "concert comeback, these songs filled festival stages. The pop star behind the lead single also released "
     "a music video that broke streaming records."),
    ("automotive", "https://wheelsweekly.example/test-drive/hybrid-sedan", "Test drive: the new hybrid sedan",
     "car review, hybrid, sedan",
     "We took the new hybrid sedan for a week long test drive. The engine pairs with an electric motor for "
     "220 horsepower, and fuel economy reached 52 mpg in mixed driving. The dealership price undercuts rival "
     "SUVs, though the tires are noisy on the highway."),
    ("automotive", "https://garagetalk.example/used", "Buying used cars without regret", "",
     "Used cars can be a bargain if you check the vehicle history. Ask the dealer for service records, "
     "inspect the engine and tires, and always take a test drive before signing."),
    ("business", "https://marketpulse.example/startups/q3", "Startup funding rebounds in third quarter", "startups, revenue",
     "Startups raised more money this quarter as revenue growth returned. Several company founders said "
     "executives are focused on profit rather than expansion. A large merger between two software firms "
     "was approved by shareholders, and marketing budgets are rising again."),
    ("careers", "https://jobready.example/interview-tips", "Ten interview tips recruiters wish you knew",
     "job interview, resume, career advice",
     "Recruiters see hundreds of resumes every week. To stand out in a job interview, research the employer, "
     "prepare stories about your career, and ask about salary only after an offer. Internships and a strong "
     "cover letter help graduates enter a competitive job market."),
    ("economics", "https://macrolens.example/inflation-outlook", "Inflation outlook: will the central bank cut?", "",
     "Inflation eased for a third month, but economists warn that the economy is not out of the woods. "
     "The central bank held interest rates steady while unemployment ticked up. Tariffs and a widening trade "
     "deficit could weigh on economic growth and GDP next year, raising recession fears."),
    ("education", "https://campuslife.example/admissions", "How college admissions changed this year",
     "college admissions, students, university",
     "Universities received record applications as students applied to more colleges. Admissions officers "
     "say the curriculum, teacher recommendations and exam results still matter most. Scholarships and "
     "tuition support are expanding, and online courses now count toward some degrees."),
    ("education", "https://teachershub.example/homework", "Rethinking homework in high school", "",
     "Teachers are debating how much homework high school students really need. Classroom time, lectures "
     "and exams compete with learning at home. Professors at the education school studied the question."),
    ("family & parenting", "https://littlesteps.example/toddler-sleep", "Toddler sleep: what every parent should know",
     "parenting, toddler, baby",
     "Parents of toddlers often struggle with bedtime. Newborn babies sleep in short bursts, but by age two "
     "kids need a routine. Our parenting experts share tips from mothers and fathers, and explain when to "
     "ask about childcare changes. Family life gets easier with a consistent schedule."),
    ("fashion", "https://runwayreport.example/fall-collection", "Runway report: the fall collection",
     "fashion week, runway, designer",
     "Fashion week closed with a dramatic runway show. The designer sent out couture dresses, oversized "
     "handbags and chunky sneakers. Street style photographers captured outfits outside, and the trends "
     "point to bold colour and vintage jewelry this season."),
    ("folklore", "https://oldtales.example/dragons", "Dragons in European folklore", "folklore, myths, legends",
     "Dragons appear in the folklore of nearly every European country. These legends and myths often mix "
     "with fairy tales about goblins and trolls. Folktales warned of witchcraft, and superstition shaped how "
     "villagers told the stories of ancient spirits."),
    ("food & drink", "https://simmerpot.example/recipes/weeknight-pasta", "Easy weeknight pasta with olive oil and garlic",
     "easy recipes, pasta, dinner ideas",
     "This pasta recipe is ready in twenty minutes. Cook the pasta, warm olive oil with garlic and chili, and "
     "toss with parmesan. Our chef suggests a glass of red wine. Looking for more dinner ideas? Browse our "
     "healthy recipes and dessert baking section."),
    ("food & drink", "https://brewcorner.example/coffee-guide", "A beginner's guide to coffee at home", "",
     "Good coffee starts with fresh ingredients. Grind beans just before brewing, and taste as you go. "
     "Restaurants and cafes use scales; you can too. Pair your cup with breakfast pastries."),
    ("health & fitness", "https://wellnessdaily.example/diabetes/type-2-diet", "Type 2 diabetes: what to eat",
     "diabetes, diet, nutrition",
     "Managing type 2 diabetes starts with diet. Doctors recommend fiber, lean protein and fewer refined "
     "carbs. Insulin resistance improves with exercise and weight loss. Talk to your doctor before changing "
     "treatment, and watch for symptoms of low blood sugar."),
    ("health & fitness", "https://heartsmart.example/blood-pressure", "Lowering blood pressure naturally", "",
     "High blood pressure raises the risk of heart disease. Patients can lower it with exercise, less salt "
     "and stress management. Cholesterol and obesity also matter. If symptoms persist, visit a hospital or "
     "clinic for clinical testing and therapy options."),
    ("health & fitness", "https://fitlab.example/workouts/hiit", "The 20 minute HIIT workout", "fitness, workout",
     "This fitness workout burns calories fast. Warm up, then alternate sprints with rest. Combine workouts "
     "with good nutrition for healthy weight loss, and stretch to prevent pain."),
    ("history", "https://pastpages.example/rome", "The fall of the Roman Empire", "history, roman empire",
     "Historians still debate why the Roman Empire fell. Over centuries, war, economic crisis and weak "
     "emperors eroded the state. Archaeology shows that medieval towns grew from Roman settlements, and the "
     "Renaissance later revived ancient learning."),
    ("history", "https://wartimes.example/cold-war", "Cold War: the missile crisis revisited", "",
     "Sixty years later, historians revisit the missile crisis. Archives from the cold war era reveal how "
     "close the world came to war. This historical account follows the leaders of the century's most tense "
     "standoff."),
    ("hobbies & interests", "https://makersden.example/knitting-basics", "Knitting basics for beginners",
     "knitting, crochet, crafts",
     "Knitting is a relaxing hobby that anyone can learn. Start with a simple scarf, chunky yarn and large "
     "needles. Once you master the basics, try crochet or other crafts. Our DIY section also covers "
     "woodworking and scrapbooking projects."),
    ("hobbies & interests", "https://trailhead.example/camping-checklist", "The ultimate camping checklist", "",
     "Planning a camping and hiking weekend? Pack a tent, a camera for photography, fishing gear and a "
     "chess set for rainy evenings. Outdoor tips from our hobby community."),
    ("home", "https://nestwell.example/kitchen-renovation", "Kitchen renovation on a budget",
     "home improvement, kitchen, renovation",
     "A kitchen renovation does not have to break the bank. Repaint cabinets, update appliances and add "
     "new lighting. Interior design experts suggest a neutral sofa and warm decor for the living room, and "
     "a deep cleaning before you start remodeling the bathroom."),
    ("law", "https://courtwatch.example/ruling", "Supreme Court ruling reshapes privacy law",
     "supreme court, law, ruling",
     "The Supreme Court issued a landmark ruling on digital privacy. Lawyers for the plaintiff argued that "
     "the statute was outdated, while the defendant's attorneys defended the lower court verdict. Legal "
     "scholars expect new lawsuits and litigation to follow."),
    ("military", "https://defensewire.example/navy-fleet", "Navy expands fleet amid new threats", "",
     "The navy announced plans to expand its fleet as military planners respond to missile threats. Troops "
     "from the army and marines took part in joint exercises, and veterans groups praised new defense "
     "funding. The armed forces also plan to modernize artillery."),
    ("news", "https://dailywire.example/latest", "Breaking news: storm hits the coast",
     "breaking news, latest news",
     "Breaking news this morning: a powerful storm hit the coast overnight. Our journalists and "
     "correspondents report the latest updates from the region. Headlines today focus on power outages. "
     "Reporters will update this story at a press conference later today."),
    ("personal finance", "https://moneywise.example/mortgage-rates", "Mortgage rates fall: should you refinance?",
     "mortgage, credit score, savings",
     "Mortgage rates dropped again this week. Homeowners with a good credit score may save by refinancing "
     "their loans. Financial planners recommend paying down credit card debt first, building a savings "
     "account and investing for retirement. Check your budget and tax situation before deciding."),
    ("personal finance", "https://coinledger.example/bitcoin-tax", "How bitcoin is taxed", "",
     "Cryptocurrency investments are taxed like property. If you sold bitcoin, you owe taxes on the gain. "
     "Keep records of every trade, and talk to a financial advisor about retirement planning and insurance."),
    ("pets", "https://pawsome.example/puppy-training", "Puppy training: the first week",
     "dog training, puppy, pets",
     "Bringing home a new puppy is exciting. Start dog training on day one with short sessions and treats. "
     "Ask your veterinarian about vaccines, choose the right dog food for the breed, and get a comfortable "
     "leash. Cats and kittens need a different approach to grooming."),
    ("philosophy", "https://thinkingroom.example/stoicism", "Stoicism for modern life", "philosophy, stoicism, ethics",
     "Stoicism teaches that we control our judgments, not events. Philosophers from Socrates to Kant asked "
     "how to live well. Ethics and logic were central to the Stoics, while later existentialism questioned "
     "the meaning of life. Moral philosophy remains a guide for critical thinking."),
    ("politics", "https://capitolbeat.example/election-2024", "Senate race tightens ahead of election",
     "election, senate, campaign",
     "The Senate race tightened as the election nears. Both campaigns courted undecided voters, and the "
     "president visited the state twice. Democrats and Republicans clashed over new legislation in "
     "Congress, and the governor urged residents to vote early by ballot."),
    ("politics", "https://policywonk.example/parliament", "Parliament debates new voting law", "",
     "Members of parliament debated a bill on voting rules. The prime minister defended the legislation "
     "while opposition leaders demanded more debate. Political analysts expect the vote next week."),
    ("real estate", "https://keyhunt.example/rentals/downtown", "Downtown apartments for rent",
     "apartments, rent, listings",
     "Browse new listings for downtown apartments and condos. Rent prices fell slightly this month as "
     "landlords compete for tenants. Our realtors can help homebuyers compare properties, and the housing "
     "market report shows more homes for sale."),
    ("religion", "https://gracefellowship.example/sermons/hope", "Sunday sermon: finding hope",
     "sermon, bible study, church",
     "Join us for Sunday service at our church. This week's sermon explores hope in scripture. Our pastor "
     "leads bible study on Wednesday evenings, and the prayer group meets after worship. All are welcome "
     "to share their faith and prayer requests."),
    ("religion", "https://faithroots.example/ramadan", "A guide to Ramadan", "",
     "During Ramadan, Muslims fast from dawn to sunset. The month is a time of prayer, reading the Quran "
     "and charity. Mosques host evening prayers, and families gather to break the fast. Spiritual "
     "reflection is at the heart of the faith."),
    ("science", "https://labnotes.example/black-hole-image", "Astronomers capture a new black hole image",
     "astronomy, black hole, telescope",
     "Astronomers released a sharper image of a black hole using a global telescope network. The research "
     "team combined data from observatories, and physics models matched the observations. Scientists say "
     "the discovery will test theories of gravity and evolution of galaxies."),
    ("science", "https://genelab.example/crispr", "Gene editing study reported in peer reviewed journal", "",
     "A peer reviewed study describes a new gene editing experiment. Researchers in the laboratory edited "
     "the genome of yeast. Biology and chemistry experts say the scientific method was sound."),
    ("society", "https://commonground.example/volunteers", "Volunteers keep community kitchen running",
     "community, volunteers, charity",
     "A community charity relies on volunteers to serve meals every day. The nonprofit helps families "
     "facing discrimination and supports immigration services. Organizers say diversity and equality are "
     "core values, and civil rights groups have joined the effort."),
    ("sports", "https://matchday.example/league/final", "Champions crowned after dramatic final",
     "football, league, final score",
     "The league final went to extra time before the champions scored. The coach praised the athletes "
     "after a tense championship season. The goalkeeper made three saves in the shootout. Transfer news "
     "and the final score are below, plus highlights from the tournament."),
    ("sports", "https://courtside.example/nba/playoffs", "Playoffs preview: who wins the west?", "",
     "The NBA playoffs start Saturday. Basketball analysts favor the top seed, but injuries could "
     "change the series. The coach said players are ready for the games ahead this season."),
    ("technology & computing", "https://bytebeat.example/reviews/laptop-2024", "Review: the thinnest laptop yet",
     "laptop, review, technology",
     "The new laptop is thin, light and fast. Its processor handles programming and video editing with "
     "ease, and the battery lasts all day. The operating system ships with cloud backup and strong "
     "cybersecurity features. Developers will appreciate the Linux support."),
    ("technology & computing", "https://devcorner.example/python-ml", "Machine learning with Python", "",
     "Machine learning is easier than ever. This tutorial uses Python to train an algorithm on open "
     "source data. Developers can run the code on a smartphone app or in the cloud."),
    ("travel", "https://wanderlist.example/lisbon-guide", "Lisbon travel guide: things to do",
     "travel guide, lisbon, hotels",
     "Planning a trip to Lisbon? Our travel guide covers the best hotels, cheap flights and things to do. "
     "Tourists love the old town, and the airport is close to the center. Book a resort on the coast for "
     "a beach vacation, and plan your itinerary ahead."),
    ("travel", "https://jetsetter.example/cruise-deals", "Best cruise deals this winter", "",
     "Cruise lines are offering deals on winter vacations. Destinations include the Caribbean and "
     "Mediterranean. Airlines have added flights to port cities, and hotel deals make a pre-cruise stay "
     "affordable for travelers with a passport ready."),
    ("news", "https://metrotimes.example/city/council", "City council approves budget: latest news", "",
     "Latest news from city hall: the council approved the budget after a long debate. Reporters at the "
     "press conference asked about police funding. This report will be updated with top stories today."),
]

TEMPLATE = """<!DOCTYPE html>
<html lang="en">
<head>
<meta charset="utf-8">
<title>{title}</title>
{keywords}<style>
body {{ font-family: sans-serif; }} .nav a {{ margin: 0 4px; }}
</style>
<script>
window.dataLayer = window.dataLayer || []; function gtag(){{dataLayer.push(arguments);}}
gtag('config', 'UA-000000-1');
</script>
</head>
<body>
<div class="nav"><a href="/">Home</a> <a href="/about">About</a> <a href="/contact">Contact</a></div>
<article>
<h1>{title}</h1>
<p>{body}</p>
</article>
<iframe src="https://tpc.googlesyndication.com/safeframe/1-0-40/html/container.html" width="300" height="250"></iframe>
<footer>Copyright. Privacy policy. Terms of use. Subscribe to our newsletter.</footer>
<script src="https://www.google-analytics.com/analytics.js"></script>
</body>
</html>
"""


def main(out_dir):
    os.makedirs(out_dir, exist_ok=True)
    rows = []
    for i, (cat, url, title, keywords, body) in enumerate(PAGES):
        name = f"{i:02d}.html"
        kw = f'<meta name="keywords" content="{html.escape(keywords)}">\n' if keywords else ""
        with open(os.path.join(out_dir, name), "w", encoding="utf-8") as f:
            f.write(TEMPLATE.format(title=html.escape(title), keywords=kw, body=html.escape(body)))
        rows.append(f"{name}\t{url}\t{cat}")
    with open(os.path.join(out_dir, "labels.tsv"), "w", encoding="utf-8") as f:
        f.write("# <file>\t<page url>\t<gold top-level category>\n")
        f.write("\n".join(rows) + "\n")
    print(f"{len(PAGES)} pages -> {out_dir}")


if __name__ == "__main__":
    here = os.path.dirname(os.path.abspath(__file__))
    default = os.path.join(here, "..", "crates", "trackwall", "tests", "fixtures", "pages")
    main(sys.argv[1] if len(sys.argv) > 1 else default)
