//! Reader for a Turtle subset: `@prefix`/`PREFIX`, IRIs, prefixed names,
//! plain, typed and language-tagged literals, numeric and boolean shorthand,
//! `;` and `,` abbreviations and `a`. Blank nodes, collections and base
//! IRIs are rejected with an error naming the construct.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::query::TripleStore;
use crate::rdf::{vocab, Term, Triple};

pub fn parse_turtle(text: &str) -> Result<TripleStore> {
    Ok(parse_turtle_triples(text)?.into_iter().collect())
}

/// Every triple statement in document order, duplicates included.
pub fn parse_turtle_triples(text: &str) -> Result<Vec<Triple>> {
    let mut parser = Parser {
        chars: text.chars().collect(),
        pos: 0,
        line: 1,
        column: 1,
        prefixes: HashMap::new(),
        triples: Vec::new(),
    };
    parser.document()?;
    Ok(parser.triples)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
    prefixes: HashMap<String, String>,
    triples: Vec<Triple>,
}

type Mark = (usize, usize);

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, offset: usize) -> Option<char> {
        self.chars.get(self.pos + offset).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn mark(&self) -> Mark {
        (self.line, self.column)
    }

    fn error_at(&self, (line, column): Mark, message: impl Into<String>) -> Error {
        Error::Turtle {
            line,
            column,
            message: message.into(),
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        self.error_at(self.mark(), message)
    }

    fn unsupported(&self, construct: &'static str) -> Error {
        Error::UnsupportedConstruct {
            construct,
            line: self.line,
            column: self.column,
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn expect(&mut self, expected: char) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c == expected => {
                self.bump();
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected `{expected}`, found `{c}`"))),
            None => Err(self.error(format!("expected `{expected}`, found end of input"))),
        }
    }

    fn starts_with_keyword(&self, keyword: &str) -> bool {
        let len = keyword.chars().count();
        let matches = keyword
            .chars()
            .enumerate()
            .all(|(i, k)| self.peek_at(i).is_some_and(|c| c.eq_ignore_ascii_case(&k)));
        matches
            && self
                .peek_at(len)
                .is_none_or(|c| c.is_whitespace() || c == '<')
    }

    fn document(&mut self) -> Result<()> {
        loop {
            self.skip_ws();
            let Some(c) = self.peek() else {
                return Ok(());
            };
            if c == '@' {
                if self.starts_with_keyword("@prefix") {
                    self.pos_advance(7);
                    self.prefix_declaration()?;
                    self.expect('.')?;
                } else if self.starts_with_keyword("@base") {
                    return Err(self.unsupported("base IRI"));
                } else {
                    return Err(self.error("unknown directive"));
                }
            } else if self.starts_with_keyword("PREFIX") {
                self.pos_advance(6);
                self.prefix_declaration()?;
            } else if self.starts_with_keyword("BASE") {
                return Err(self.unsupported("base IRI"));
            } else {
                self.triples_statement()?;
                self.expect('.')?;
            }
        }
    }

    fn pos_advance(&mut self, n: usize) {
        for _ in 0..n {
            self.bump();
        }
    }

    fn prefix_declaration(&mut self) -> Result<()> {
        self.skip_ws();
        let start = self.mark();
        let mut prefix = String::new();
        while let Some(c) = self.peek() {
            if c == ':' {
                break;
            }
            if !(c.is_alphanumeric() || matches!(c, '_' | '-' | '.')) {
                return Err(self.error_at(start, "invalid prefix name"));
            }
            prefix.push(c);
            self.bump();
        }
        self.expect(':')?;
        self.skip_ws();
        let iri = self.iri_ref()?;
        self.prefixes.insert(prefix, iri);
        Ok(())
    }

    fn triples_statement(&mut self) -> Result<()> {
        let subject = match self.term_start()? {
            Term::Iri(iri) => iri,
            _ => return Err(self.error("subject must be an IRI")),
        };
        loop {
            self.skip_ws();
            let predicate = self.verb()?;
            loop {
                self.skip_ws();
                let object = self.term_start()?;
                self.triples
                    .push(Triple::new(subject.clone(), predicate.clone(), object));
                self.skip_ws();
                if self.peek() == Some(',') {
                    self.bump();
                } else {
                    break;
                }
            }
            self.skip_ws();
            if self.peek() != Some(';') {
                return Ok(());
            }
            while self.peek() == Some(';') {
                self.bump();
                self.skip_ws();
            }
            // A trailing `;` before `.` is allowed.
            if matches!(self.peek(), Some('.') | None) {
                return Ok(());
            }
        }
    }

    fn verb(&mut self) -> Result<String> {
        if self.peek() == Some('a')
            && self
                .peek_at(1)
                .is_none_or(|c| c.is_whitespace() || matches!(c, '<' | '"' | '\'' | '['))
        {
            self.bump();
            return Ok(vocab::RDF_TYPE.to_string());
        }
        match self.term_start()? {
            Term::Iri(iri) => Ok(iri),
            _ => Err(self.error("predicate must be an IRI")),
        }
    }

    /// Any term in subject or object position.
    fn term_start(&mut self) -> Result<Term> {
        self.skip_ws();
        let start = self.mark();
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some('<') => Ok(Term::Iri(self.iri_ref()?)),
            Some('[') => Err(self.unsupported("blank node property list")),
            Some('(') => Err(self.unsupported("collection")),
            Some('_') if self.peek_at(1) == Some(':') => Err(self.unsupported("blank node")),
            Some('"') | Some('\'') => self.literal(),
            Some(c) if c.is_ascii_digit() || matches!(c, '+' | '-') => self.numeric(),
            Some('.') if self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) => self.numeric(),
            Some(c) if c.is_alphabetic() || c == ':' || c == '_' => {
                if self.starts_with_word("true") {
                    self.pos_advance(4);
                    return Ok(Term::typed("true", vocab::XSD_BOOLEAN));
                }
                if self.starts_with_word("false") {
                    self.pos_advance(5);
                    return Ok(Term::typed("false", vocab::XSD_BOOLEAN));
                }
                Ok(Term::Iri(self.prefixed_name(start)?))
            }
            Some(c) => Err(self.error(format!("unexpected character `{c}`"))),
        }
    }

    fn starts_with_word(&self, word: &str) -> bool {
        let len = word.chars().count();
        word.chars()
            .enumerate()
            .all(|(i, w)| self.peek_at(i) == Some(w))
            && self
                .peek_at(len)
                .is_none_or(|c| !(c.is_alphanumeric() || matches!(c, ':' | '_' | '-')))
    }

    fn iri_ref(&mut self) -> Result<String> {
        let start = self.mark();
        if self.peek() != Some('<') {
            return Err(self.error("expected IRI"));
        }
        self.bump();
        let mut iri = String::new();
        loop {
            match self.bump() {
                None => return Err(self.error_at(start, "unterminated IRI")),
                Some('>') => break,
                Some('\\') => iri.push(self.unicode_escape()?),
                Some(c) if c <= ' ' || matches!(c, '<' | '"' | '{' | '}' | '|' | '^' | '`') => {
                    return Err(self.error(format!("invalid character {c:?} in IRI")))
                }
                Some(c) => iri.push(c),
            }
        }
        if !has_scheme(&iri) {
            return Err(Error::UnsupportedConstruct {
                construct: "relative IRI",
                line: start.0,
                column: start.1,
            });
        }
        Ok(iri)
    }

    /// After a backslash: `uXXXX` or `UXXXXXXXX`.
    fn unicode_escape(&mut self) -> Result<char> {
        let len = match self.bump() {
            Some('u') => 4,
            Some('U') => 8,
            _ => return Err(self.error("invalid escape sequence")),
        };
        let mut hex = String::new();
        for _ in 0..len {
            match self.bump() {
                Some(c) if c.is_ascii_hexdigit() => hex.push(c),
                _ => return Err(self.error("invalid unicode escape")),
            }
        }
        u32::from_str_radix(&hex, 16)
            .ok()
            .and_then(char::from_u32)
            .ok_or_else(|| self.error("invalid code point"))
    }

    fn prefixed_name(&mut self, start: Mark) -> Result<String> {
        let mut prefix = String::new();
        while let Some(c) = self.peek() {
            if c == ':' {
                break;
            }
            if !(c.is_alphanumeric() || matches!(c, '_' | '-' | '.')) {
                return Err(self.error_at(start, format!("unexpected character `{c}`")));
            }
            prefix.push(c);
            self.bump();
        }
        if self.peek() != Some(':') {
            return Err(self.error_at(start, format!("unknown keyword `{prefix}`")));
        }
        self.bump();
        let namespace = self
            .prefixes
            .get(&prefix)
            .cloned()
            .ok_or_else(|| self.error_at(start, format!("undefined prefix `{prefix}:`")))?;

        let mut local = String::new();
        loop {
            match self.peek() {
                Some(c) if c.is_alphanumeric() || matches!(c, '_' | '-' | ':') => {
                    local.push(c);
                    self.bump();
                }
                Some('%') => {
                    let hex: Option<String> = (1..=2).map(|i| self.peek_at(i)).collect();
                    match hex {
                        Some(h) if h.chars().all(|c| c.is_ascii_hexdigit()) => {
                            local.push('%');
                            local.push_str(&h);
                            self.pos_advance(3);
                        }
                        _ => return Err(self.error("invalid percent escape in local name")),
                    }
                }
                Some('\\') => {
                    self.bump();
                    match self.bump() {
                        Some(c) if "_~.-!$&'()*+,;=/?#@%".contains(c) => local.push(c),
                        _ => return Err(self.error("invalid escape in local name")),
                    }
                }
                // A dot belongs to the name only when more name follows.
                Some('.')
                    if self.peek_at(1).is_some_and(|c| {
                        c.is_alphanumeric() || matches!(c, '_' | '-' | ':' | '%' | '\\' | '.')
                    }) && !local.is_empty() =>
                {
                    local.push('.');
                    self.bump();
                }
                _ => break,
            }
        }
        while local.ends_with('.') {
            // Only reachable via consecutive dots; hand them back.
            local.pop();
            self.pos -= 1;
            self.column -= 1;
        }
        Ok(format!("{namespace}{local}"))
    }

    fn literal(&mut self) -> Result<Term> {
        let start = self.mark();
        let quote = self.bump().expect("caller checked");
        let long = self.peek() == Some(quote) && self.peek_at(1) == Some(quote);
        if long {
            self.pos_advance(2);
        }
        let mut lexical = String::new();
        loop {
            match self.bump() {
                None => return Err(self.error_at(start, "unterminated string")),
                Some(c) if c == quote => {
                    if !long {
                        break;
                    }
                    if self.peek() == Some(quote) && self.peek_at(1) == Some(quote) {
                        self.pos_advance(2);
                        // Extra quotes directly before the delimiter are content.
                        while self.peek() == Some(quote) {
                            lexical.push(quote);
                            self.bump();
                        }
                        break;
                    }
                    lexical.push(c);
                }
                Some('\n') | Some('\r') if !long => {
                    return Err(self.error("line break in short string"))
                }
                Some('\\') => {
                    let escaped = match self.peek() {
                        Some('t') => '\t',
                        Some('b') => '\u{8}',
                        Some('n') => '\n',
                        Some('r') => '\r',
                        Some('f') => '\u{c}',
                        Some('"') => '"',
                        Some('\'') => '\'',
                        Some('\\') => '\\',
                        Some('u') | Some('U') => {
                            lexical.push(self.unicode_escape()?);
                            continue;
                        }
                        _ => return Err(self.error("invalid string escape")),
                    };
                    self.bump();
                    lexical.push(escaped);
                }
                Some(c) => lexical.push(c),
            }
        }

        if self.peek() == Some('@') {
            self.bump();
            let mut lang = String::new();
            while let Some(c) = self.peek() {
                if c.is_ascii_alphanumeric() || c == '-' {
                    lang.push(c);
                    self.bump();
                } else {
                    break;
                }
            }
            if lang.is_empty() {
                return Err(self.error("empty language tag"));
            }
            return Ok(Term::LangLiteral { lexical, lang });
        }
        if self.peek() == Some('^') && self.peek_at(1) == Some('^') {
            self.pos_advance(2);
            let datatype_start = self.mark();
            let datatype = match self.peek() {
                Some('<') => self.iri_ref()?,
                _ => self.prefixed_name(datatype_start)?,
            };
            return Ok(Term::typed(lexical, datatype));
        }
        Ok(Term::PlainLiteral(lexical))
    }

    fn numeric(&mut self) -> Result<Term> {
        let mut text = String::new();
        if let Some(c @ ('+' | '-')) = self.peek() {
            text.push(c);
            self.bump();
        }
        let digits = |p: &mut Parser, text: &mut String| {
            let mut n = 0;
            while let Some(c) = p.peek().filter(char::is_ascii_digit) {
                text.push(c);
                p.bump();
                n += 1;
            }
            n
        };
        let integer_digits = digits(self, &mut text);
        let mut datatype = vocab::XSD_INTEGER;
        if self.peek() == Some('.') && self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) {
            text.push('.');
            self.bump();
            digits(self, &mut text);
            datatype = vocab::XSD_DECIMAL;
        } else if integer_digits == 0 {
            return Err(self.error("invalid number"));
        }
        if let Some(e @ ('e' | 'E')) = self.peek() {
            text.push(e);
            self.bump();
            if let Some(c @ ('+' | '-')) = self.peek() {
                text.push(c);
                self.bump();
            }
            if digits(self, &mut text) == 0 {
                return Err(self.error("invalid exponent"));
            }
            datatype = vocab::XSD_DOUBLE;
        }
        Ok(Term::typed(text, datatype))
    }
}

fn has_scheme(iri: &str) -> bool {
    let mut chars = iri.chars();
    if !chars.next().is_some_and(|c| c.is_ascii_alphabetic()) {
        return false;
    }
    for c in chars {
        if c == ':' {
            return true;
        }
        if !(c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.')) {
            return false;
        }
    }
    false
}
