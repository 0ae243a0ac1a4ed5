import os

import yaml

languages = {}
languages_present = {}

_LANGS = os.path.join(os.path.dirname(__file__), "langs")


def get_string(lang: str):
    return languages.get(lang, languages["en"])


def _load(filename: str) -> dict:
    with open(os.path.join(_LANGS, filename), encoding="utf8") as handle:
        return yaml.safe_load(handle)


languages["en"] = _load("en.yml")
languages_present["en"] = languages["en"]["name"]

for filename in sorted(os.listdir(_LANGS)):
    if not filename.endswith(".yml") or filename == "en.yml":
        continue
    language_name = filename[:-4]
    languages[language_name] = _load(filename)
    for item in languages["en"]:
        if item not in languages[language_name]:
            languages[language_name][item] = languages["en"][item]
    try:
        languages_present[language_name] = languages[language_name]["name"]
    except KeyError:
        raise SystemExit(f"[ERROR] - message catalogue {filename} has no 'name' entry.")
