"""Closed vocabulary for the shipped sentence fixtures.

Verb lists only contain forms whose simple past equals the past participle
so active and passive templates share one surface form.  A handful of
multi-word noun phrases exercise span ranges and the phrase-frequency
fallback.
"""

ANIMATE = [
    "teacher", "nanny", "doctor", "nurse", "lawyer", "judge", "farmer",
    "baker", "butcher", "barber", "tailor", "plumber", "waiter", "chef",
    "pilot", "sailor", "soldier", "sheriff", "dentist", "surgeon", "banker",
    "cashier", "clerk", "librarian", "professor", "student", "tutor",
    "coach", "athlete", "dancer", "singer", "actor", "director", "producer",
    "editor", "author", "poet", "journalist", "reporter", "photographer",
    "designer", "engineer", "architect", "scientist", "chemist", "biologist",
    "researcher", "programmer", "technician", "mechanic", "electrician",
    "carpenter", "mason", "welder", "miner", "fisherman", "hunter", "ranger",
    "guard", "janitor", "gardener", "florist", "grocer", "merchant",
    "vendor", "trader", "broker", "manager", "supervisor", "toddler",
    "child", "boy", "girl", "man", "woman", "grandmother", "grandfather",
    "uncle", "aunt", "cousin", "neighbor", "stranger", "visitor", "guest",
    "tourist", "traveler", "monk", "priest", "bishop", "nun", "mayor",
    "senator", "governor", "king", "queen", "prince", "princess", "knight",
    "clown", "magician", "juggler", "acrobat", "wrestler", "boxer",
    "swimmer", "runner", "cyclist", "skier", "golfer", "referee", "umpire",
    "captain", "colonel", "detective", "inspector", "curator", "sculptor",
    "violinist", "pianist", "drummer", "composer", "conductor", "usher",
    "bellhop", "doorman", "locksmith", "blacksmith", "shepherd", "cowboy",
    "beekeeper", "winemaker", "brewer", "fishmonger", "innkeeper",
    "landlord", "tenant", "plaintiff", "witness", "juror", "bailiff",
    "paramedic", "pharmacist", "optometrist", "therapist", "counselor",
    "principal", "dean", "chancellor", "treasurer", "auditor", "accountant",
    "intern", "apprentice", "trainee", "recruit", "veteran", "pensioner",
    "widow", "orphan", "bride", "groom", "godfather", "godmother",
]

ANIMATE_MULTI = [
    "social worker", "police officer", "tour guide", "lab assistant",
    "taxi driver", "flight attendant", "security guard", "mail carrier",
    "bus driver", "shop owner", "bank teller", "construction worker",
    "opera singer", "chess player", "sous chef", "park ranger",
]

INANIMATE = [
    "laptop", "book", "table", "chair", "lamp", "mirror", "carpet",
    "curtain", "blanket", "pillow", "basket", "bucket", "ladder", "hammer",
    "wrench", "shovel", "rake", "broom", "kettle", "teapot", "plate",
    "bowl", "spoon", "fork", "bottle", "jar", "vase", "clock", "watch",
    "radio", "camera", "telescope", "microscope", "bicycle", "wagon",
    "sled", "canoe", "kayak", "guitar", "violin", "piano", "drum",
    "trumpet", "flute", "painting", "statue", "poster", "map", "globe",
    "notebook", "journal", "letter", "envelope", "package", "parcel",
    "crate", "barrel", "suitcase", "backpack", "wallet", "purse",
    "umbrella", "raincoat", "jacket", "sweater", "scarf", "glove", "boot",
    "sandal", "helmet", "crown", "necklace", "bracelet", "ring", "candle",
    "lantern", "torch", "rope", "chain", "net", "cage", "fence", "gate",
    "door", "window", "stove", "oven", "toaster", "blender", "computer",
    "printer", "keyboard", "monitor", "telephone", "television", "couch",
    "sofa", "dresser", "cabinet", "shelf", "desk", "bench", "stool",
    "mattress", "quilt", "towel", "apron", "banner", "flag", "kite",
    "balloon", "whistle", "bell", "anchor", "oar", "paddle", "saddle",
    "harness", "plow", "tractor", "trailer", "engine", "motor", "pump",
    "valve", "pipe", "faucet", "sink", "bathtub", "railing", "banister",
]

INANIMATE_MULTI = [
    "coffee table", "picture frame", "washing machine", "cutting board",
    "rocking chair", "garden hose", "music box", "alarm clock",
]

# transitive verbs plausible with an animate agent and inanimate patient
AI_VERBS = [
    "bought", "carried", "cleaned", "repaired", "painted", "dropped",
    "lifted", "opened", "closed", "borrowed", "returned", "designed",
    "cooked", "washed", "folded", "packed", "wrapped", "polished",
    "measured", "weighed", "moved", "stored", "ordered", "delivered",
    "collected", "stacked", "counted", "labeled", "sharpened", "assembled",
    "installed", "adjusted", "decorated", "inspected", "tested",
    "photographed", "sketched", "examined", "displayed", "arranged",
    "organized", "sold", "rented", "donated", "shipped", "mailed",
    "balanced", "loaded", "unloaded", "stitched", "mended", "varnished",
    "dusted", "scrubbed", "rinsed", "dried", "ironed", "hemmed",
]

# interaction verbs where the role reversal is unlikely but possible
AA_VERBS = [
    "tutored", "scolded", "hired", "fired", "praised", "rescued",
    "arrested", "guarded", "coached", "trained", "examined", "treated",
    "cured", "bandaged", "interviewed", "recruited", "promoted", "demoted",
    "supervised", "mentored", "advised", "counseled", "consoled",
    "comforted", "warned", "cautioned", "bribed", "robbed", "kidnapped",
    "interrogated", "questioned", "accused", "defended", "prosecuted",
    "pardoned", "sentenced", "evicted", "sheltered", "adopted", "groomed",
    "served", "tipped", "overcharged", "billed", "paid", "sponsored",
    "funded", "audited", "investigated", "chased", "impersonated",
    "imitated", "emulated", "admired", "revered", "idolized", "envied",
    "pitied", "mocked", "taunted", "teased", "heckled", "applauded",
    "cheered", "congratulated", "saluted", "escorted", "guided", "misled",
    "deceived", "conned", "swindled", "tricked", "fooled", "startled",
    "shocked", "amazed", "impressed", "disappointed", "annoyed",
    "irritated", "angered", "calmed", "soothed", "reassured", "encouraged",
    "discouraged", "motivated", "inspired", "intimidated", "terrorized",
    "threatened", "menaced", "harassed", "pestered", "badgered", "nagged",
    "lectured", "scolded", "rewarded", "punished", "nursed", "fed",
]

# reciprocal verbs: both orders describe plausible events
CONTROL_VERBS = [
    "kissed", "hugged", "called", "visited", "invited", "married",
    "trusted", "believed", "supported", "complimented", "missed", "loved",
    "liked", "respected", "resembled", "copied", "quoted", "mentioned",
    "introduced", "contacted", "consulted", "debated", "confronted",
    "avoided", "ignored", "approached", "noticed", "recognized",
    "remembered", "watched", "followed", "joined", "challenged", "raced",
    "emailed", "texted", "phoned", "greeted", "thanked", "surprised",
    "poked", "nudged", "tickled", "photographed", "sketched", "passed",
    "bumped", "tapped",
]

NOUN_SYNONYMS = {
    "teacher": "instructor", "doctor": "physician", "lawyer": "attorney",
    "child": "kid", "boy": "lad", "woman": "lady", "man": "gentleman",
    "singer": "vocalist", "author": "writer", "chef": "cook",
    "guard": "sentry", "judge": "magistrate", "student": "pupil",
    "tourist": "sightseer", "neighbor": "acquaintance", "visitor": "caller",
    "king": "monarch", "queen": "empress", "clown": "jester",
    "boxer": "fighter", "referee": "official", "manager": "boss",
    "professor": "lecturer", "dentist": "orthodontist", "farmer": "rancher",
    "sailor": "seaman", "soldier": "trooper", "sheriff": "marshal",
    "detective": "investigator", "tailor": "seamstress",
    "toddler": "infant", "stranger": "outsider", "mayor": "alderman",
    "monk": "friar", "priest": "clergyman", "senator": "legislator",
    "banker": "financier", "trader": "dealer", "janitor": "custodian",
    "mechanic": "machinist", "engineer": "technologist",
    "laptop": "computer", "book": "novel", "couch": "sofa", "rug": "carpet",
    "mirror": "looking glass", "curtain": "drape", "blanket": "quilt",
    "bucket": "pail", "hammer": "mallet", "kettle": "teapot",
    "plate": "dish", "bottle": "flask", "vase": "urn", "clock": "timepiece",
    "camera": "camcorder", "bicycle": "cycle", "canoe": "kayak",
    "guitar": "banjo", "painting": "portrait", "statue": "sculpture",
    "map": "chart", "notebook": "journal", "letter": "note",
    "package": "parcel", "crate": "carton", "suitcase": "valise",
    "wallet": "billfold", "umbrella": "parasol", "jacket": "coat",
    "scarf": "shawl", "helmet": "headgear", "necklace": "pendant",
    "candle": "taper", "lantern": "lamp", "rope": "cord", "cage": "pen",
    "gate": "door", "stove": "cooker", "sofa": "settee", "desk": "bureau",
    "bench": "stool", "towel": "cloth", "flag": "banner", "kite": "glider",
    "whistle": "horn", "anchor": "mooring", "oar": "paddle",
    "saddle": "harness", "tractor": "plow", "engine": "motor",
    "pipe": "tube", "sink": "basin",
}

VERB_SYNONYMS = {
    "bought": "purchased", "repaired": "fixed", "cleaned": "scrubbed",
    "carried": "hauled", "painted": "varnished", "lifted": "hoisted",
    "opened": "unlocked", "closed": "sealed", "borrowed": "rented",
    "returned": "restored", "cooked": "prepared", "washed": "rinsed",
    "folded": "creased", "packed": "crated", "wrapped": "covered",
    "polished": "buffed", "measured": "gauged", "weighed": "balanced",
    "moved": "shifted", "stored": "stashed", "ordered": "requested",
    "delivered": "transported", "collected": "gathered", "stacked": "piled",
    "counted": "tallied", "labeled": "tagged", "sharpened": "honed",
    "assembled": "constructed", "installed": "mounted", "adjusted": "tuned",
    "decorated": "adorned", "inspected": "examined", "tested": "checked",
    "sketched": "drew", "displayed": "exhibited", "arranged": "organized",
    "sold": "auctioned", "donated": "gifted", "shipped": "mailed",
    "tutored": "coached", "scolded": "reprimanded", "hired": "recruited",
    "fired": "dismissed", "praised": "complimented", "rescued": "saved",
    "arrested": "detained", "guarded": "protected", "trained": "drilled",
    "examined": "evaluated", "treated": "nursed", "cured": "healed",
    "interviewed": "questioned", "promoted": "advanced",
    "supervised": "monitored", "mentored": "guided", "advised": "counseled",
    "consoled": "comforted", "warned": "cautioned", "robbed": "mugged",
    "interrogated": "grilled", "accused": "blamed", "defended": "shielded",
    "evicted": "expelled", "adopted": "fostered", "served": "assisted",
    "paid": "compensated", "audited": "reviewed", "chased": "pursued",
    "imitated": "mimicked", "admired": "revered", "envied": "resented",
    "mocked": "ridiculed", "taunted": "jeered", "teased": "needled",
    "applauded": "cheered", "congratulated": "saluted",
    "escorted": "accompanied", "misled": "deceived", "conned": "swindled",
    "tricked": "fooled", "startled": "spooked", "shocked": "stunned",
    "amazed": "astonished", "impressed": "dazzled", "annoyed": "irritated",
    "angered": "enraged", "calmed": "soothed", "reassured": "comforted",
    "encouraged": "motivated", "inspired": "uplifted",
    "intimidated": "menaced", "threatened": "terrorized",
    "harassed": "pestered", "badgered": "nagged", "rewarded": "compensated",
    "punished": "disciplined", "kissed": "smooched", "hugged": "embraced",
    "called": "phoned", "visited": "dropped in on", "invited": "summoned",
    "married": "wed", "trusted": "believed", "supported": "backed",
    "missed": "mourned", "loved": "adored", "liked": "enjoyed",
    "respected": "esteemed", "copied": "imitated", "quoted": "cited",
    "mentioned": "named", "introduced": "presented", "contacted": "reached",
    "consulted": "queried", "debated": "argued with",
    "confronted": "challenged", "avoided": "dodged", "ignored": "snubbed",
    "approached": "neared", "noticed": "spotted", "recognized": "identified",
    "remembered": "recalled", "watched": "observed", "followed": "trailed",
    "joined": "accompanied", "raced": "outpaced",
    "greeted": "welcomed", "thanked": "applauded", "surprised": "startled",
    "poked": "prodded", "nudged": "bumped", "tickled": "teased",
}

# (verb, typical patients, atypical-but-possible patients)
D2_VERB_FRAMES = [
    ("won", ["award", "trophy", "gold medal", "prize", "match"],
     ["battle", "argument", "lottery", "wager", "chess match"]),
    ("read", ["newspaper", "novel", "magazine", "letter", "menu"],
     ["contract", "repair manual", "dictionary", "receipt", "road map"]),
    ("cooked", ["dinner", "stew", "omelet", "pot roast", "breakfast"],
     ["feast", "banquet", "jam", "broth", "rice casserole"]),
    ("drank", ["coffee", "tea", "juice", "water", "milk"],
     ["cider", "lemonade", "vinegar", "broth", "tonic"]),
    ("wrote", ["letter", "essay", "report", "poem", "speech"],
     ["verdict", "diagnosis", "sermon", "manifesto", "eulogy"]),
    ("painted", ["portrait", "landscape", "mural", "fence", "wall"],
     ["sign", "toenail", "ceiling", "banner", "mask"]),
    ("held", ["drink", "umbrella", "baby", "pen", "phone"],
     ["camera", "trophy", "step ladder", "torch", "protest banner"]),
    ("crossed", ["street", "bridge", "road", "park", "field"],
     ["river", "desert", "border", "glacier", "swamp"]),
    ("stacked", ["plate", "box", "book", "chair", "crate"],
     ["suitcase", "barrel", "brick", "tire", "log"]),
    ("hit", ["ball", "nail", "target", "drum", "gong"],
     ["wall", "post", "fence", "pinata", "bumper"]),
    ("planted", ["tree", "rose", "seed", "tulip", "shrub"],
     ["cactus", "vine", "orchid", "fern", "palm"]),
    ("rode", ["horse", "bicycle", "bus", "train", "scooter"],
     ["camel", "donkey", "tram", "gondola", "ferry"]),
    ("caught", ["fish", "ball", "frisbee", "butterfly", "mouse"],
     ["eel", "crab", "pigeon", "lizard", "moth"]),
    ("fixed", ["car", "faucet", "radio", "fence", "roof"],
     ["organ", "loom", "turbine", "windmill", "clocktower"]),
    ("wore", ["jacket", "hat", "scarf", "uniform", "apron"],
     ["cape", "kilt", "tuxedo", "poncho", "sash"]),
    ("watered", ["garden", "lawn", "plant", "flower", "hedge"],
     ["orchard", "vineyard", "meadow", "nursery", "terrace"]),
    ("packed", ["suitcase", "lunch", "backpack", "box", "crate"],
     ["trunk", "hamper", "satchel", "duffel", "locker"]),
    ("climbed", ["ladder", "mountain", "staircase", "tree", "hill"],
     ["cliff", "tower", "ridge", "rooftop", "mast"]),
    ("washed", ["dish", "car", "window", "shirt", "floor"],
     ["tablecloth", "rug", "awning", "tarp", "sail"]),
    ("drove", ["car", "truck", "bus", "van", "tractor"],
     ["limousine", "ambulance", "forklift", "snowplow", "hearse"]),
]

D2_AGENTS = [
    "actor", "student", "chef", "farmer", "teacher", "nurse", "pilot",
    "tour guide", "police officer", "bank teller", "taxi driver",
    "waiter", "clerk", "painter", "banker", "tailor", "barber", "plumber",
    "singer", "dancer", "writer", "sailor", "soldier", "hunter", "ranger",
    "mayor", "judge", "monk", "guard", "child", "guest", "tourist",
    "athlete", "golfer", "boxer", "magician", "policeman", "fireman",
    "janitor", "gardener", "butcher", "grocer", "librarian",
]

# present-progressive triples for the small third set
D3_ITEMS = [
    ("cop", "arresting", "criminal"), ("doctor", "examining", "patient"),
    ("teacher", "grading", "student"), ("coach", "benching", "player"),
    ("nurse", "bathing", "newborn"), ("judge", "sentencing", "defendant"),
    ("vet", "vaccinating", "puppy"), ("barber", "shaving", "customer"),
    ("guard", "escorting", "prisoner"), ("dentist", "numbing", "patient"),
    ("professor", "quizzing", "freshman"), ("chef", "instructing", "apprentice"),
    ("lifeguard", "rescuing", "swimmer"), ("officer", "ticketing", "driver"),
    ("therapist", "counseling", "veteran"), ("principal", "suspending", "bully"),
    ("landlord", "evicting", "tenant"), ("manager", "promoting", "intern"),
    ("captain", "briefing", "recruit"), ("director", "auditioning", "actor"),
    ("surgeon", "operating on", "patient"), ("tutor", "drilling", "pupil"),
    ("banker", "auditing", "merchant"), ("sheriff", "deputizing", "volunteer"),
    ("paramedic", "reviving", "victim"), ("usher", "seating", "guest"),
    ("curator", "guiding", "visitor"), ("pharmacist", "dosing", "patient"),
    ("referee", "ejecting", "player"), ("bailiff", "restraining", "suspect"),
    ("mother", "feeding", "baby"), ("shepherd", "herding", "lamb"),
    ("social worker", "checking on", "foster child"),
    ("park ranger", "waving at", "hiker"),
    ("tour guide", "calling out to", "straggler"),
    ("flight attendant", "looking after", "toddler"),
    ("police officer", "handing a ticket to", "motorist"),
    ("lab assistant", "filling in for", "technician"),
]
