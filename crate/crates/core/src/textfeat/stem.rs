//! English Porter2 (Snowball) stemmer.
//!
//! Works on `char` buffers so non-ASCII input never panics; anything outside
//! `a e i o u y` counts as a consonant.

const DOUBLES: [&str; 9] = ["bb", "dd", "ff", "gg", "mm", "nn", "pp", "rr", "tt"];

/// Whole-word exceptions checked before any rule fires.
const EXCEPTIONS: [(&str, &str); 18] = [
    ("skis", "ski"),
    ("skies", "sky"),
    ("dying", "die"),
    ("lying", "lie"),
    ("tying", "tie"),
    ("idly", "idl"),
    ("gently", "gentl"),
    ("ugly", "ugli"),
    ("early", "earli"),
    ("only", "onli"),
    ("singly", "singl"),
    ("sky", "sky"),
    ("news", "news"),
    ("howe", "howe"),
    ("atlas", "atlas"),
    ("cosmos", "cosmos"),
    ("bias", "bias"),
    ("andes", "andes"),
];

/// Words left alone once step 1a has run.
const POST_1A_EXCEPTIONS: [&str; 8] = [
    "inning", "outing", "canning", "herring", "earring", "proceed", "exceed", "succeed",
];

const REGION_PREFIXES: [&str; 3] = ["gener", "commun", "arsen"];

// Longest suffix first within each table.
const STEP2: [(&str, &str); 24] = [
    ("ization", "ize"),
    ("ational", "ate"),
    ("fulness", "ful"),
    ("ousness", "ous"),
    ("iveness", "ive"),
    ("tional", "tion"),
    ("biliti", "ble"),
    ("lessli", "less"),
    ("entli", "ent"),
    ("ation", "ate"),
    ("alism", "al"),
    ("aliti", "al"),
    ("ousli", "ous"),
    ("iviti", "ive"),
    ("fulli", "ful"),
    ("enci", "ence"),
    ("anci", "ance"),
    ("abli", "able"),
    ("izer", "ize"),
    ("ator", "ate"),
    ("alli", "al"),
    ("bli", "ble"),
    ("ogi", "og"),
    ("li", ""),
];

const STEP3: [(&str, &str); 9] = [
    ("ational", "ate"),
    ("tional", "tion"),
    ("alize", "al"),
    ("icate", "ic"),
    ("iciti", "ic"),
    ("ative", ""),
    ("ical", "ic"),
    ("ness", ""),
    ("ful", ""),
];

const STEP4: [&str; 18] = [
    "ement", "ance", "ence", "able", "ible", "ment", "ant", "ent", "ism", "ate", "iti", "ous",
    "ive", "ize", "ion", "al", "er", "ic",
];

/// Stems one lowercase token. Mentions, hashtags and `<...>` placeholders pass through.
pub fn stem(token: &str) -> String {
    if token.starts_with(['@', '#', '<']) {
        return token.to_string();
    }
    if let Some((_, out)) = EXCEPTIONS.iter().find(|(w, _)| *w == token) {
        return out.to_string();
    }
    if token.chars().count() < 3 {
        return token.to_string();
    }
    let mut w = Word::new(token);
    w.prelude();
    w.mark_regions();
    w.step_1a();
    if !POST_1A_EXCEPTIONS.iter().any(|e| w.equals(e)) {
        w.step_1b();
        w.step_1c();
        w.step_2();
        w.step_3();
        w.step_4();
        w.step_5();
    }
    w.finish()
}

fn is_vowel(c: char) -> bool {
    matches!(c, 'a' | 'e' | 'i' | 'o' | 'u' | 'y')
}

fn is_valid_li(c: char) -> bool {
    matches!(c, 'c' | 'd' | 'e' | 'g' | 'h' | 'k' | 'm' | 'n' | 'r' | 't')
}

struct Word {
    chars: Vec<char>,
    p1: usize,
    p2: usize,
}

impl Word {
    fn new(s: &str) -> Self {
        let chars: Vec<char> = s.chars().collect();
        let len = chars.len();
        Word { chars, p1: len, p2: len }
    }

    fn len(&self) -> usize {
        self.chars.len()
    }

    fn equals(&self, s: &str) -> bool {
        self.chars.iter().copied().eq(s.chars())
    }

    fn ends_with(&self, suffix: &str) -> bool {
        let n = suffix.chars().count();
        n <= self.len() && self.chars[self.len() - n..].iter().copied().eq(suffix.chars())
    }

    fn starts_with(&self, prefix: &str) -> bool {
        let n = prefix.chars().count();
        n <= self.len() && self.chars[..n].iter().copied().eq(prefix.chars())
    }

    /// Start index of `suffix` if the word ends with it.
    fn suffix_start(&self, suffix: &str) -> Option<usize> {
        self.ends_with(suffix).then(|| self.len() - suffix.chars().count())
    }

    fn replace_from(&mut self, start: usize, with: &str) {
        self.chars.truncate(start);
        self.chars.extend(with.chars());
    }

    fn has_vowel(&self, range: std::ops::Range<usize>) -> bool {
        self.chars[range].iter().any(|&c| is_vowel(c))
    }

    fn prelude(&mut self) {
        if self.chars.first() == Some(&'\'') {
            self.chars.remove(0);
        }
        if self.chars.first() == Some(&'y') {
            self.chars[0] = 'Y';
        }
        for i in 1..self.len() {
            if self.chars[i] == 'y' && is_vowel(self.chars[i - 1]) {
                self.chars[i] = 'Y';
            }
        }
    }

    /// Index just past the first consonant that follows a vowel, at or after `from`.
    fn region_after(&self, from: usize) -> usize {
        let mut i = from;
        while i < self.len() && !is_vowel(self.chars[i]) {
            i += 1;
        }
        while i < self.len() && is_vowel(self.chars[i]) {
            i += 1;
        }
        (i + 1).min(self.len())
    }

    fn mark_regions(&mut self) {
        self.p1 = match REGION_PREFIXES.iter().find(|p| self.starts_with(p)) {
            Some(p) => p.chars().count(),
            None => self.region_after(0),
        };
        self.p2 = self.region_after(self.p1);
    }

    /// Short syllable ending at `end` (exclusive).
    fn short_syllable_at(&self, end: usize) -> bool {
        let c = &self.chars;
        if end >= 3 {
            let (a, b, d) = (c[end - 3], c[end - 2], c[end - 1]);
            if !is_vowel(a) && is_vowel(b) && !is_vowel(d) && !matches!(d, 'w' | 'x' | 'Y') {
                return true;
            }
        }
        end == 2 && is_vowel(c[0]) && !is_vowel(c[1])
    }

    fn step_1a(&mut self) {
        for suffix in ["'s'", "'s", "'"] {
            if let Some(start) = self.suffix_start(suffix) {
                self.chars.truncate(start);
                break;
            }
        }
        if let Some(start) = self.suffix_start("sses") {
            self.replace_from(start, "ss");
        } else if let Some(start) = self.suffix_start("ied").or_else(|| self.suffix_start("ies")) {
            let with = if start > 1 { "i" } else { "ie" };
            self.replace_from(start, with);
        } else if self.ends_with("us") || self.ends_with("ss") {
        } else if let Some(start) = self.suffix_start("s") {
            if start >= 2 && self.has_vowel(0..start - 1) {
                self.chars.truncate(start);
            }
        }
    }

    fn step_1b(&mut self) {
        let found = ["eedly", "ingly", "edly", "eed", "ing", "ed"]
            .iter()
            .find_map(|s| self.suffix_start(s).map(|start| (*s, start)));
        let Some((suffix, start)) = found else { return };
        if suffix == "eed" || suffix == "eedly" {
            if start >= self.p1 {
                self.replace_from(start, "ee");
            }
            return;
        }
        if !self.has_vowel(0..start) {
            return;
        }
        self.chars.truncate(start);
        if self.ends_with("at") || self.ends_with("bl") || self.ends_with("iz") {
            self.chars.push('e');
        } else if DOUBLES.iter().any(|d| self.ends_with(d)) {
            self.chars.pop();
        } else if self.len() == self.p1 && self.short_syllable_at(self.len()) {
            self.chars.push('e');
        }
    }

    fn step_1c(&mut self) {
        let n = self.len();
        if n >= 3 && matches!(self.chars[n - 1], 'y' | 'Y') && !is_vowel(self.chars[n - 2]) {
            self.chars[n - 1] = 'i';
        }
    }

    fn step_2(&mut self) {
        let Some((suffix, with, start)) = STEP2
            .iter()
            .find_map(|(s, r)| self.suffix_start(s).map(|start| (*s, *r, start)))
        else {
            return;
        };
        if start < self.p1 {
            return;
        }
        match suffix {
            "ogi" => {
                if start > 0 && self.chars[start - 1] == 'l' {
                    self.replace_from(start, with);
                }
            }
            "li" => {
                if start > 0 && is_valid_li(self.chars[start - 1]) {
                    self.chars.truncate(start);
                }
            }
            _ => self.replace_from(start, with),
        }
    }

    fn step_3(&mut self) {
        let Some((suffix, with, start)) = STEP3
            .iter()
            .find_map(|(s, r)| self.suffix_start(s).map(|start| (*s, *r, start)))
        else {
            return;
        };
        if start < self.p1 {
            return;
        }
        if suffix == "ative" {
            if start >= self.p2 {
                self.chars.truncate(start);
            }
        } else {
            self.replace_from(start, with);
        }
    }

    fn step_4(&mut self) {
        let Some((suffix, start)) = STEP4
            .iter()
            .find_map(|s| self.suffix_start(s).map(|start| (*s, start)))
        else {
            return;
        };
        if start < self.p2 {
            return;
        }
        if suffix == "ion" {
            if start > 0 && matches!(self.chars[start - 1], 's' | 't') {
                self.chars.truncate(start);
            }
        } else {
            self.chars.truncate(start);
        }
    }

    fn step_5(&mut self) {
        let n = self.len();
        if n == 0 {
            return;
        }
        let start = n - 1;
        match self.chars[start] {
            'e' => {
                if start >= self.p2 || (start >= self.p1 && !self.short_syllable_at(start)) {
                    self.chars.pop();
                }
            }
            'l'
                if start >= self.p2 && start > 0 && self.chars[start - 1] == 'l' => {
                    self.chars.pop();
                }
            _ => {}
        }
    }

    fn finish(self) -> String {
        self.chars
            .into_iter()
            .map(|c| if c == 'Y' { 'y' } else { c })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::stem;

    #[test]
    fn snowball_vocabulary_samples() {
        let cases = [
            ("run", "run"),
            ("babies", "babi"),
            ("loving", "love"),
            ("consign", "consign"),
            ("consigned", "consign"),
            ("consigning", "consign"),
            ("consignment", "consign"),
            ("consist", "consist"),
            ("consisted", "consist"),
            ("consistency", "consist"),
            ("consistent", "consist"),
            ("consistently", "consist"),
            ("consolation", "consol"),
            ("generously", "generous"),
            ("knightly", "knight"),
            ("cries", "cri"),
            ("ties", "tie"),
            ("gaps", "gap"),
            ("gas", "gas"),
            ("hoping", "hope"),
            ("hopping", "hop"),
            ("skies", "sky"),
            ("succeeded", "succeed"),
            ("disgrace", "disgrac"),
            ("you're", "you'r"),
            ("feed", "feed"),
            ("agreed", "agre"),
            ("communism", "communism"),
        ];
        for (word, expected) in cases {
            assert_eq!(stem(word), expected, "stem({word})");
        }
    }

    #[test]
    fn passthrough_and_short_words() {
        assert_eq!(stem("@kthopkins"), "@kthopkins");
        assert_eq!(stem("#blockkt"), "#blockkt");
        assert_eq!(stem("<url>"), "<url>");
        assert_eq!(stem("is"), "is");
        assert_eq!(stem(""), "");
        assert_eq!(stem("über"), "über");
    }
}
