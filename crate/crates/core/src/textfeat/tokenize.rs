/// Placeholder emitted for any URL.
pub const URL_TOKEN: &str = "<url>";

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

fn is_apostrophe(c: char) -> bool {
    c == '\'' || c == '\u{2019}'
}

fn is_url(chunk: &str) -> bool {
    let lower = chunk.to_lowercase();
    let lower = lower.trim_start_matches(|c: char| !c.is_alphanumeric());
    lower.starts_with("http://") || lower.starts_with("https://") || lower.starts_with("www.")
}

/// Lowercases and splits post text into tokens.
///
/// Tokens are runs of letters, digits and `_`. An apostrophe between two word
/// characters stays inside the token (`you're`), a leading `@` or `#` stays
/// attached (`@handle`, `#tag`), and whitespace-delimited URLs become `<url>`.
pub fn tokenize(text: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    for chunk in text.split_whitespace() {
        if is_url(chunk) {
            tokens.push(URL_TOKEN.to_string());
            continue;
        }
        let chars: Vec<char> = chunk.chars().collect();
        let mut current = String::new();
        for (i, &c) in chars.iter().enumerate() {
            let next_is_word = chars.get(i + 1).is_some_and(|&n| is_word_char(n));
            if is_word_char(c) {
                current.extend(c.to_lowercase());
            } else if is_apostrophe(c) && !current.is_empty() && next_is_word {
                current.push('\'');
            } else if (c == '@' || c == '#') && current.is_empty() && next_is_word {
                current.push(c);
            } else if !current.is_empty() {
                tokens.push(std::mem::take(&mut current));
            }
        }
        if !current.is_empty() {
            tokens.push(current);
        }
    }
    tokens
}
