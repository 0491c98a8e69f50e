"""Arabic script utilities and HSB (Habash-Soudi-Buckwalter) transliteration.

All stored data is Arabic script. HSB is a one-to-one romanization, used for
terminal output and for writing readable tests.
"""

import unicodedata

_HSB_TO_AR = {
    "'": "ء",  # hamza on the line
    "Ā": "آ",  # alif madda
    "Â": "أ",  # hamza above alif
    "ŵ": "ؤ",  # hamza on waw
    "Ǎ": "إ",  # hamza below alif
    "ŷ": "ئ",  # hamza on ya
    "A": "ا",
    "b": "ب",
    "ħ": "ة",  # ta marbuta
    "t": "ت",
    "θ": "ث",
    "j": "ج",
    "H": "ح",
    "x": "خ",
    "d": "د",
    "ð": "ذ",
    "r": "ر",
    "z": "ز",
    "s": "س",
    "š": "ش",
    "S": "ص",
    "D": "ض",
    "T": "ط",
    "Ď": "ظ",
    "ς": "ع",
    "γ": "غ",
    "_": "ـ",  # tatweel
    "f": "ف",
    "q": "ق",
    "k": "ك",
    "l": "ل",
    "m": "م",
    "n": "ن",
    "h": "ه",
    "w": "و",
    "ý": "ى",  # alif maqsura
    "y": "ي",
    "ã": "ً",  # fathatan
    "ũ": "ٌ",  # dammatan
    "ĩ": "ٍ",  # kasratan
    "a": "َ",
    "u": "ُ",
    "i": "ِ",
    "~": "ّ",  # shadda
    ".": "ْ",  # sukun
    "á": "ٰ",  # dagger alif
}
_AR_TO_HSB = {v: k for k, v in _HSB_TO_AR.items()}

DIACRITICS = frozenset("ًٌٍَُِّْٰ")
SHADDA = "ّ"
LETTERS = frozenset(_AR_TO_HSB) - DIACRITICS - {"ـ"}

# hamza seats and alif variants, collapsed only when folded matching is on
_FOLD = str.maketrans({
    "آ": "ا",
    "أ": "ا",
    "إ": "ا",
    "ٱ": "ا",
    "ى": "ي",
})


def hsb2ar(text: str) -> str:
    """Convert HSB text to Arabic script; unmapped characters pass through."""
    text = unicodedata.normalize("NFC", text)
    return "".join(_HSB_TO_AR.get(ch, ch) for ch in text)


def ar2hsb(text: str) -> str:
    return "".join(_AR_TO_HSB.get(ch, ch) for ch in text)


def is_diacritic(ch: str) -> bool:
    return ch in DIACRITICS


def dediac(text: str) -> str:
    return "".join(ch for ch in text if ch not in DIACRITICS)


def fold(text: str) -> str:
    return text.translate(_FOLD)


def has_arabic(text: str) -> bool:
    return any(ch in LETTERS or ch in DIACRITICS for ch in text)


def tag_hsb2ar(tag: str) -> str:
    """Convert the form part of every ``form/TAG`` segment in a BW tag."""
    return _map_tag(tag, hsb2ar)


def tag_ar2hsb(tag: str) -> str:
    return _map_tag(tag, ar2hsb)


def _map_tag(tag: str, conv) -> str:
    if not tag:
        return tag
    out = []
    for seg in tag.split("+"):
        form, sep, label = seg.partition("/")
        out.append(conv(form) + sep + label)
    return "+".join(out)
