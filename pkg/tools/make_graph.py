"""Regenerates src/kgsynth/data/graph.tsv from the tables below."""

from pathlib import Path

# country: (capital, other cities, phone code, currency, demonym, language, continent)
COUNTRIES = {
    "France": ("Paris", ["Lyon", "Marseille", "Toulouse", "Nice", "Bordeaux", "Aix"],
               "33", "EUR", "French", "French", "Europe"),
    "Germany": ("Berlin", ["Hamburg", "Munich", "Cologne", "Frankfurt"],
                "49", "EUR", "German", "German", "Europe"),
    "Poland": ("Warsaw", ["Krakow", "Gdansk"], "48", "PLN", "Polish", "Polish", "Europe"),
    "Italy": ("Rome", ["Milan", "Naples", "Turin"], "39", "EUR", "Italian", "Italian", "Europe"),
    "Spain": ("Madrid", ["Barcelona", "Seville", "Valencia"], "34", "EUR", "Spanish", "Spanish", "Europe"),
    "United Kingdom": ("London", ["Manchester", "Edinburgh"], "44", "GBP", "British", "English", "Europe"),
    "United States": ("Washington", ["Detroit", "Chicago", "Boston", "Seattle"],
                      "1", "USD", "American", "English", "North America"),
    "Canada": ("Ottawa", ["Toronto", "Montreal", "Vancouver"], "1", "CAD", "Canadian", "English",
               "North America"),
    "Mexico": ("Mexico City", ["Chihuahua", "Guadalajara", "Monterrey"], "52", "MXN", "Mexican",
               "Spanish", "North America"),
    "China": ("Beijing", ["Shanghai", "Shenzhen"], "86", "CNY", "Chinese", "Chinese", "Asia"),
    "Japan": ("Tokyo", ["Osaka", "Kyoto"], "81", "JPY", "Japanese", "Japanese", "Asia"),
    "New Zealand": ("Wellington", ["Auckland", "Christchurch"], "64", "NZD", "New Zealander", "English",
                    "Oceania"),
    "Brazil": ("Brasilia", ["Sao Paulo", "Rio de Janeiro"], "55", "BRL", "Brazilian", "Portuguese",
               "South America"),
    "Australia": ("Canberra", ["Sydney", "Melbourne"], "61", "AUD", "Australian", "English", "Oceania"),
    "Egypt": ("Cairo", ["Alexandria"], "20", "EGP", "Egyptian", "Arabic", "Africa"),
}

# The Capital / City inverse edges exist for European countries only.
EUROPE_INVERSES = {"France", "Germany", "Poland", "Italy", "Spain", "United Kingdom"}


def triples():
    out = []
    for country, (capital, cities, code, currency, demonym, language, continent) in COUNTRIES.items():
        out.append((capital, "CapitalOf", country))
        out.append((country, "isCapitalOf", capital))
        for city in [capital] + cities:
            out.append((city, "CityOf", country))
            if country in EUROPE_INVERSES:
                out.append((country, "City", city))
        if country in EUROPE_INVERSES:
            out.append((country, "Capital", capital))
        out.append((country, "phoneCode", code))
        out.append((code, "PhoneCodeOf", country))
        out.append((country, "CurrencyOf", currency))
        out.append((country, "demonym", demonym))
        out.append((country, "officialLanguage", language))
        out.append((country, "continent", continent))
    return out


HEADER = """\
# Bundled knowledge graph: subject<TAB>relation<TAB>object, one triple per line.
# Relations
#   CityOf, CapitalOf        city -> country
#   isCapitalOf              country -> capital city
#   Capital, City            country -> capital / cities (European countries only)
#   phoneCode, PhoneCodeOf   country -> calling code, and back
#   CurrencyOf, demonym, officialLanguage, continent   country -> value
"""

if __name__ == "__main__":
    target = Path(__file__).resolve().parents[1] / "src" / "kgsynth" / "data" / "graph.tsv"
    body = "".join(f"{s}\t{r}\t{o}\n" for s, r, o in triples())
    target.write_text(HEADER + body, encoding="utf-8")
    print(f"wrote {len(triples())} triples to {target}")
