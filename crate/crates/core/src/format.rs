//! Line-oriented text formats shared by the graph, embedding, assignment,
//! triangulation, geometric and CNF readers.
//!
//! Blank lines are skipped and `#` starts a comment that runs to the end of
//! the line.

pub(crate) struct ContentLines<'a> {
    inner: std::iter::Peekable<std::iter::Enumerate<std::str::Lines<'a>>>,
}

impl<'a> ContentLines<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        ContentLines {
            inner: text.lines().enumerate().peekable(),
        }
    }

    fn skip_blank(&mut self) {
        while let Some((_, raw)) = self.inner.peek() {
            if strip(raw).is_empty() {
                self.inner.next();
            } else {
                break;
            }
        }
    }

    /// Tokens of the next non-blank line without consuming it.
    pub(crate) fn peek(&mut self) -> Option<(usize, Vec<&'a str>)> {
        self.skip_blank();
        self.inner
            .peek()
            .map(|&(i, raw)| (i + 1, strip(raw).split_whitespace().collect()))
    }
}

impl<'a> Iterator for ContentLines<'a> {
    /// 1-based line number and whitespace-separated tokens.
    type Item = (usize, Vec<&'a str>);

    fn next(&mut self) -> Option<Self::Item> {
        self.skip_blank();
        self.inner
            .next()
            .map(|(i, raw)| (i + 1, strip(raw).split_whitespace().collect()))
    }
}

fn strip(raw: &str) -> &str {
    match raw.find('#') {
        Some(pos) => raw[..pos].trim(),
        None => raw.trim(),
    }
}

/// Fixed-precision float rendering used by every writer so repeated runs are
/// byte-identical.
pub fn fmt_f64(x: f64) -> String {
    let s = format!("{x:.12}");
    if s == "-0.000000000000" {
        "0.000000000000".to_string()
    } else {
        s
    }
}
