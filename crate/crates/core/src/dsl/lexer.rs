use super::SyntaxError;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Tok {
    Plus,
    Minus,
    Times,
    LParen,
    RParen,
    Comma,
    Number(f64),
    Ident(String),
    PosSuffix,
    NegSuffix,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Plus => "`<+>`".into(),
            Tok::Minus => "`<->`".into(),
            Tok::Times => "`<x>`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Number(n) => format!("number `{n}`"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::PosSuffix => "`_+`".into(),
            Tok::NegSuffix => "`_-`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Token {
    pub tok: Tok,
    /// 1-based character position of the first character.
    pub pos: usize,
}

fn err(pos: usize, expected: &[&str], found: impl Into<String>) -> SyntaxError {
    SyntaxError {
        position: pos,
        expected: expected.iter().map(|s| s.to_string()).collect(),
        found: found.into(),
    }
}

fn found_char(c: Option<char>) -> String {
    match c {
        Some(c) => format!("`{c}`"),
        None => "end of input".into(),
    }
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<Token>, SyntaxError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let digit_at = |j: usize| chars.get(j).is_some_and(|c| c.is_ascii_digit());
        let starts_number =
            |j: usize| digit_at(j) || (chars.get(j) == Some(&'.') && digit_at(j + 1));
        let tok = match c {
            '<' => {
                let op = match (chars.get(i + 1), chars.get(i + 2)) {
                    (Some('+'), Some('>')) => Tok::Plus,
                    (Some('-'), Some('>')) => Tok::Minus,
                    (Some('x'), Some('>')) => Tok::Times,
                    _ => {
                        let seen: String = chars[i..chars.len().min(i + 3)].iter().collect();
                        return Err(err(pos, &["`<+>`", "`<->`", "`<x>`"], format!("`{seen}`")));
                    }
                };
                i += 3;
                op
            }
            '(' => {
                i += 1;
                Tok::LParen
            }
            ')' => {
                i += 1;
                Tok::RParen
            }
            ',' => {
                i += 1;
                Tok::Comma
            }
            '_' if matches!(chars.get(i + 1), Some('+') | Some('-')) => {
                i += 2;
                if chars[i - 1] == '+' {
                    Tok::PosSuffix
                } else {
                    Tok::NegSuffix
                }
            }
            c if c.is_ascii_digit() || c == '.' || ((c == '-' || c == '+') && starts_number(i + 1)) => {
                let start = i;
                if c == '-' || c == '+' {
                    i += 1;
                }
                while digit_at(i) {
                    i += 1;
                }
                if chars.get(i) == Some(&'.') {
                    i += 1;
                    while digit_at(i) {
                        i += 1;
                    }
                }
                if matches!(chars.get(i), Some('e') | Some('E')) {
                    let sign = matches!(chars.get(i + 1), Some('+') | Some('-')) as usize;
                    if digit_at(i + 1 + sign) {
                        i += 1 + sign;
                        while digit_at(i) {
                            i += 1;
                        }
                    }
                }
                let literal: String = chars[start..i].iter().collect();
                match literal.parse::<f64>() {
                    Ok(v) if v.is_finite() => Tok::Number(v),
                    _ => return Err(err(pos, &["finite number"], format!("`{literal}`"))),
                }
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while let Some(&c) = chars.get(i) {
                    let suffix_next =
                        c == '_' && matches!(chars.get(i + 1), Some('+') | Some('-'));
                    if (c.is_ascii_alphanumeric() || c == '_') && !suffix_next {
                        i += 1;
                    } else {
                        break;
                    }
                }
                Tok::Ident(chars[start..i].iter().collect())
            }
            other => {
                return Err(err(
                    pos,
                    &["`<+>`", "`<->`", "`<x>`", "`(`", "`)`", "`,`", "number", "identifier"],
                    found_char(Some(other)),
                ))
            }
        };
        tokens.push(Token { tok, pos });
    }
    tokens.push(Token {
        tok: Tok::Eof,
        pos: chars.len() + 1,
    });
    Ok(tokens)
}
