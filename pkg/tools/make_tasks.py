"""Regenerates the bundled benchmark under src/kgsynth/data/tasks/."""

import json
from pathlib import Path

# name -> (metadata, [(inputs, output), ...]); a bare string input means arity 1
TASKS = {
    # purely syntactic
    "love-first-letter": ((0, 0, 0), [("Paris", "I love P"), ("Berlin", "I love B"), ("Madrid", "I love M")]),
    "text-file-name": ((0, 0, 0), [("report", "report.txt"), ("notes", "notes.txt"), ("todo", "todo.txt")]),
    "welcome-message": ((0, 0, 0), [("Alice", "Hello Alice, welcome!"), ("Bob", "Hello Bob, welcome!"),
                                     ("Chen", "Hello Chen, welcome!")]),
    "first-name": ((0, 0, 0), [("John Smith", "John"), ("Ada Lovelace", "Ada"), ("Alan Turing", "Alan")]),
    "join-with-dash": ((0, 0, 0), [(("ab", "cd"), "ab-cd"), (("x1", "y2"), "x1-y2"), (("foo", "bar"), "foo-bar")]),

    # syntactic entity extraction, no relation
    "second-city": ((1, 0, 0), [("Aix, Paris, Bordeaux", "Paris"), ("Hamburg, Berlin, Munich", "Berlin"),
                                ("Krakow, Warsaw, Gdansk", "Warsaw")]),
    "last-word-city": ((1, 0, 0), [("I visited Berlin", "Berlin"), ("We flew to Tokyo", "Tokyo"),
                                   ("She lives in Rome", "Rome")]),
    "city-before-comma": ((1, 0, 0), [("Lyon, France", "Lyon"), ("Munich, Germany", "Munich"),
                                      ("Osaka, Japan", "Osaka")]),
    "country-after-colon": ((1, 0, 0), [("country:France", "France"), ("country:Spain", "Spain"),
                                        ("country:Egypt", "Egypt")]),

    # one relation, inputs are entities
    "capital-of-country": ((0, 1, 0), [("France", "Paris"), ("Germany", "Berlin"), ("Japan", "Tokyo")]),
    "country-is-beautiful": ((0, 1, 0), [("Paris", "France is beautiful"), ("Berlin", "Germany is beautiful"),
                                         ("Detroit", "United States is beautiful")]),
    "currency-of-country": ((0, 1, 0), [("France", "Currency: EUR"), ("Poland", "Currency: PLN"),
                                        ("Japan", "Currency: JPY")]),
    "demonym-capital": ((0, 1, 0), [("France", "French, capital:Paris"), ("Germany", "German, capital:Berlin"),
                                    ("China", "Chinese, capital:Beijing"),
                                    ("New Zealand", "New Zealander, capital:Wellington")]),
    "city-is-in-country": ((0, 1, 0), [("Paris", "Paris is in France"), ("Lyon", "Lyon is in France"),
                                       ("Boston", "Boston is in United States")]),

    # two relations, inputs are entities
    "phone-code-sentence": ((0, 2, 0), [("Paris", "The phone country code is 33"),
                                        ("Berlin", "The phone country code is 49"),
                                        ("Detroit", "The phone country code is 1"),
                                        ("Chihuahua", "The phone country code is 52")]),
    "phone-code-label": ((0, 2, 0), [("Paris", "Phone country code: 33"), ("Berlin", "Phone country code: 49"),
                                     ("Warsaw", "Phone country code: 48")]),
    "city-currency": ((0, 2, 0), [("Lyon", "EUR"), ("Chicago", "USD"), ("Osaka", "JPY")]),
    "city-language": ((0, 2, 0), [("Munich", "They speak German"), ("Seville", "They speak Spanish"),
                                  ("Kyoto", "They speak Japanese")]),

    # syntactic extraction, then one relation
    "country-of-second-city": ((1, 1, 0), [("Aix, Paris, Bordeaux", "France"),
                                           ("Hamburg, Berlin, Munich", "Germany"),
                                           ("Krakow, Warsaw, Gdansk", "Poland")]),
    "country-of-visited-city": ((1, 1, 0), [("I visited Berlin", "Germany"), ("We flew to Tokyo", "Japan"),
                                            ("She lives in Cairo", "Egypt")]),
    "capital-from-label": ((1, 1, 0), [("country:France", "Paris"), ("country:Spain", "Madrid"),
                                       ("country:Egypt", "Cairo")]),
    "currency-from-pair": ((1, 1, 0), [("Lyon, France", "France pays in EUR"),
                                       ("Osaka, Japan", "Japan pays in JPY"),
                                       ("Cairo, Egypt", "Egypt pays in EGP")]),

    # syntactic extraction, then two relations
    "phone-code-of-first-city": ((1, 2, 0), [("Lyon, Nice", "Call +33 now"), ("Boston, Chicago", "Call +1 now"),
                                             ("Osaka, Kyoto", "Call +81 now")]),
    "currency-of-visited-city": ((1, 2, 0), [("I visited Lyon", "EUR"), ("We flew to Osaka", "JPY"),
                                             ("She lives in Chicago", "USD")]),
    "language-of-second-city": ((1, 2, 0), [("Aix, Lyon, Nice", "French"), ("Osaka, Kyoto, Tokyo", "Japanese"),
                                            ("Cairo, Alexandria, Giza", "Arabic")]),
    "continent-of-city-label": ((1, 2, 0), [("city:Lyon", "Europe"), ("city:Osaka", "Asia"),
                                            ("city:Chicago", "North America")]),

    # semantic extraction
    "country-of-titled-capital": ((2, 1, 0), [("The beautiful Paris", "France"),
                                              ("Berlin in winter", "Germany"),
                                              ("old town of Rome at dusk", "Italy")]),
    "capital-in-sentence": ((2, 1, 0), [("Yesterday I saw Paris", "France"), ("Tokyo was great", "Japan"),
                                        ("we loved Cairo a lot", "Egypt")]),
    "currency-in-phrase": ((2, 1, 0), [("France is lovely", "EUR"), ("trip to Japan soon", "JPY"),
                                       ("Poland", "PLN")]),
    "demonym-in-phrase": ((2, 1, 0), [("hello France", "French"), ("Japan rocks", "Japanese"),
                                      ("my Egypt trip", "Egyptian")]),

    # knowledge postprocessing
    "country-first-letter": ((0, 1, 1), [("Paris", "Country's first letter: F"),
                                         ("Berlin", "Country's first letter: G"),
                                         ("Tokyo", "Country's first letter: J")]),
    "capital-initial": ((0, 1, 1), [("France", "P"), ("Germany", "B"), ("Japan", "T")]),
    "currency-lowercase": ((0, 1, 1), [("France", "eur"), ("Japan", "jpy"), ("Poland", "pln")]),
    "capital-upper": ((0, 1, 1), [("France", "PARIS"), ("Germany", "BERLIN"), ("Japan", "TOKYO")]),

    "phone-code-plus-one": ((0, 2, 1), [("Paris", "34"), ("Berlin", "50"), ("Tokyo", "82")]),
    "phone-code-doubled": ((0, 2, 1), [("Lyon", "3333"), ("Munich", "4949"), ("Osaka", "8181")]),
    "city-currency-initial": ((0, 2, 1), [("Lyon", "E"), ("Osaka", "J"), ("Cairo", "E")]),
    "city-language-upper": ((0, 2, 1), [("Lyon", "FRENCH"), ("Osaka", "JAPANESE"), ("Cairo", "ARABIC")]),

    "country-initial-of-second-city": ((1, 1, 1), [("Aix, Paris, Bordeaux", "F"),
                                                    ("Hamburg, Berlin, Munich", "G"),
                                                    ("Krakow, Tokyo, Osaka", "J")]),
    "capital-upper-from-label": ((1, 1, 1), [("country:France", "PARIS"), ("country:Spain", "MADRID"),
                                             ("country:Egypt", "CAIRO")]),
    "currency-lower-of-visited-city": ((1, 1, 1), [("I visited Paris", "france"),
                                                    ("We flew to Tokyo", "japan"),
                                                    ("She lives in Cairo", "egypt")]),
    "country-code-of-first-city": ((1, 1, 1), [("Lyon, Nice", "FR"), ("Osaka, Kyoto", "JP"),
                                               ("Cairo, Giza", "EG")]),
}


def as_json(name, metadata, pairs):
    examples = [{"inputs": [ins] if isinstance(ins, str) else list(ins), "output": out} for ins, out in pairs]
    e, r, p = metadata
    return {"name": name, "examples": examples,
            "metadata": {"entity_extraction": e, "relation_complexity": r, "postprocessing": p}}


if __name__ == "__main__":
    target = Path(__file__).resolve().parents[1] / "src" / "kgsynth" / "data" / "tasks"
    target.mkdir(parents=True, exist_ok=True)
    for old in target.glob("*.json"):
        old.unlink()
    for name, (metadata, pairs) in TASKS.items():
        text = json.dumps(as_json(name, metadata, pairs), indent=2, ensure_ascii=False) + "\n"
        (target / f"{name}.json").write_text(text, encoding="utf-8")
    print(f"wrote {len(TASKS)} tasks to {target}")
