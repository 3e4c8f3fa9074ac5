use super::{Pos, SyntaxError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Base(u32),
    Unit,
    Fst,
    Snd,
    Map,
    Fold,
    Nil,
    Backslash,
    Colon,
    Dot,
    Comma,
    Arrow,
    Star,
    ColonColon,
    PlusPlus,
    LParen,
    RParen,
    LBrack,
    RBrack,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Base(k) => format!("`'{k}`"),
            Tok::Eof => "end of input".to_string(),
            other => format!("`{}`", other.text()),
        }
    }

    fn text(&self) -> &'static str {
        match self {
            Tok::Unit => "Unit",
            Tok::Fst => "fst",
            Tok::Snd => "snd",
            Tok::Map => "map",
            Tok::Fold => "fold",
            Tok::Nil => "nil",
            Tok::Backslash => "\\",
            Tok::Colon => ":",
            Tok::Dot => ".",
            Tok::Comma => ",",
            Tok::Arrow => "->",
            Tok::Star => "*",
            Tok::ColonColon => "::",
            Tok::PlusPlus => "++",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBrack => "[",
            Tok::RBrack => "]",
            Tok::Ident(_) | Tok::Base(_) | Tok::Eof => "",
        }
    }
}

pub(crate) fn lex(src: &str) -> Result<Vec<(Tok, Pos)>, SyntaxError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let next = chars.get(i + 1).copied();
        let (tok, len) = match c {
            '\\' => (Tok::Backslash, 1),
            ':' if next == Some(':') => (Tok::ColonColon, 2),
            ':' => (Tok::Colon, 1),
            '.' => (Tok::Dot, 1),
            ',' => (Tok::Comma, 1),
            '-' if next == Some('>') => (Tok::Arrow, 2),
            '+' if next == Some('+') => (Tok::PlusPlus, 2),
            '*' => (Tok::Star, 1),
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            '[' => (Tok::LBrack, 1),
            ']' => (Tok::RBrack, 1),
            '\'' => {
                let digits: String = chars[i + 1..].iter().take_while(|c| c.is_ascii_digit()).collect();
                if digits.is_empty() {
                    return Err(SyntaxError::new(pos, "expected a base type index after `'`"));
                }
                let k = digits
                    .parse()
                    .map_err(|_| SyntaxError::new(pos, format!("base type index {digits} is too large")))?;
                (Tok::Base(k), 1 + digits.len())
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let word: String = chars[i..].iter().take_while(|c| c.is_ascii_alphanumeric() || **c == '_').collect();
                let tok = match word.as_str() {
                    "Unit" => Tok::Unit,
                    "fst" => Tok::Fst,
                    "snd" => Tok::Snd,
                    "map" => Tok::Map,
                    "fold" => Tok::Fold,
                    "nil" => Tok::Nil,
                    _ => Tok::Ident(word.clone()),
                };
                (tok, word.chars().count())
            }
            other => return Err(SyntaxError::new(pos, format!("unexpected character `{other}`"))),
        };
        out.push((tok, pos));
        i += len;
        col += len;
    }
    out.push((Tok::Eof, Pos { line, col }));
    Ok(out)
}
