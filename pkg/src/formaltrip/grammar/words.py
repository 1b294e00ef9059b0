"""Bundled vocabulary word lists for english naming mode.

Static lists keep builds hermetic: verbs serve as predicate names and
given names as object names. All entries are single identifier tokens.
"""

VERBS = (
    "accept", "admire", "advise", "agree", "allow", "amble", "announce",
    "answer", "applaud", "argue", "arrive", "ask", "assist", "attack",
    "attend", "avoid", "bake", "balance", "bargain", "bathe", "beg",
    "behave", "believe", "belong", "bend", "bless", "blink", "boast",
    "borrow", "bounce", "bow", "brag", "breathe", "brush", "build",
    "call", "camp", "care", "carry", "carve", "celebrate", "challenge",
    "change", "charge", "chase", "cheer", "chew", "choose", "chop",
    "claim", "clap", "clean", "climb", "close", "coach", "collect",
    "comfort", "command", "compare", "compete", "complain", "confess",
    "connect", "consider", "cook", "copy", "correct", "cough", "count",
    "cover", "crawl", "create", "cross", "cry", "dance", "dare",
    "decide", "decorate", "defend", "deliver", "describe", "design",
    "dig", "dine", "discuss", "dive", "dodge", "drag", "draw", "dream",
    "dress", "drift", "drive", "drop", "drum", "dust", "earn", "eat",
    "employ", "encourage", "enjoy", "escape", "examine", "exercise",
    "expect", "explain", "explore", "farm", "fetch", "fish", "fix",
    "flee", "float", "fold", "follow", "forgive", "gallop", "gather",
    "gaze", "giggle", "glance", "glide", "grab", "greet", "grin",
    "guard", "guess", "guide", "harvest", "haul", "heal", "help",
    "hike", "hire", "hop", "hug", "hum", "hunt", "hurry", "imagine",
    "inspect", "invite", "jog", "joke", "judge", "juggle", "jump",
    "kick", "kiss", "knit", "knock", "laugh", "lead", "lean", "leap",
    "learn", "lecture", "lift", "listen", "march", "measure", "meet",
    "mend", "mentor", "mimic", "mix", "mourn", "move", "mumble",
    "murmur", "nod", "notice", "obey", "observe", "offer", "paint",
    "pardon", "pause", "perform", "persuade", "play", "plead", "point",
    "polish", "ponder", "praise", "pray", "prepare", "promise",
    "protect", "punish", "push", "question", "race", "reach", "recite",
    "rescue", "rest", "ride", "roam", "row", "run", "sail", "salute",
    "scold", "scrub", "search", "serve", "sew", "share", "shout",
    "sing", "sketch", "smile", "stew", "study", "teach", "thank",
    "travel", "trust", "visit", "wander", "wave", "whisper", "yell",
)

NAMES = (
    "Abel", "Ada", "Adele", "Agnes", "Aiden", "Alice", "Alton", "Amara",
    "Amos", "Anders", "Anika", "Anton", "April", "Archie", "Arlo",
    "Asher", "Astrid", "Aubrey", "August", "Aurora", "Barack", "Basil",
    "Bea", "Bennett", "Bertha", "Blaise", "Boris", "Brenda", "Bridget",
    "Bruno", "Callum", "Camila", "Carl", "Carmen", "Cassius", "Cecil",
    "Celia", "Cesar", "Clara", "Clement", "Clive", "Colette", "Conrad",
    "Cora", "Cyrus", "Dahlia", "Damian", "Daphne", "Darius", "Deane",
    "Declan", "Delia", "Dexter", "Dinah", "Dmitri", "Dora", "Dorian",
    "Edgar", "Edith", "Eleanor", "Elias", "Elsa", "Emil", "Enzo",
    "Esme", "Ethan", "Eugene", "Eva", "Ezra", "Fabian", "Faye",
    "Felix", "Fern", "Finn", "Flora", "Floyd", "Franz", "Freya",
    "Gideon", "Gilda", "Giles", "Gloria", "Grady", "Greta", "Gustav",
    "Hazel", "Hector", "Heidi", "Henrik", "Hilda", "Hollis", "Hugo",
    "Ida", "Igor", "Ines", "Ira", "Irene", "Isaac", "Isla", "Ivan",
    "Ivy", "Jasper", "Jenna", "Jonas", "Jorge", "Josie", "Jude",
    "Julius", "June", "Kai", "Karl", "Kiara", "Lars", "Leif", "Lena",
    "Leo", "Lila", "Linus", "Lola", "Lorenzo", "Lucia", "Luther",
    "Lydia", "Mabel", "Magnus", "Maia", "Marcel", "Marius", "Mavis",
    "Maya", "Milan", "Miles", "Milo", "Mira", "Moira", "Morris",
    "Nadia", "Nellie", "Nico", "Nina", "Noel", "Nora", "Oberon",
    "Odette", "Olga", "Olive", "Omar", "Opal", "Oscar", "Otis",
    "Otto", "Paloma", "Pascal", "Pearl", "Percy", "Petra", "Philip",
    "Phoebe", "Pierre", "Piper", "Quincy", "Ramona", "Raul", "Reese",
    "Rex", "Rhea", "Rocco", "Roland", "Rosa", "Ruben", "Rufus",
    "Sadie", "Salma", "Samson", "Selma", "Seth", "Silas", "Simone",
    "Sofia", "Soren", "Stella", "Sven", "Tamsin", "Tara", "Tess",
    "Theo", "Thora", "Tobias", "Tova", "Ulric", "Uma", "Ursula",
    "Vance", "Vera", "Victor", "Viola", "Wade", "Walter", "Wanda",
    "Wesley", "Willa", "Xavier", "Yara", "Yusuf", "Zara", "Zeke",
)
