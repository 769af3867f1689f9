//! Line-oriented result documents.
//!
//! ```text
//! command = compress
//! table primitives: kind start end
//!   segment 0 4
//! end table
//! totals.t_count = 2
//! ```
//!
//! Keys and table cells never contain spaces; field values never contain
//! newlines. Rendering is canonical, so re-rendering a parsed document
//! yields the same bytes.

use std::fmt::{Display, Write as _};

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum DocumentError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Item {
    Field { key: String, value: String },
    Table(Table),
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ResultDocument {
    pub items: Vec<Item>,
}

fn valid_token(s: &str) -> bool {
    !s.is_empty() && !s.chars().any(char::is_whitespace)
}

impl ResultDocument {
    pub fn new() -> Self {
        ResultDocument::default()
    }

    /// Appends `key = value`; empty values are written as `-`.
    pub fn field(&mut self, key: &str, value: impl Display) -> &mut Self {
        assert!(valid_token(key), "invalid key '{key}'");
        let mut value = value.to_string();
        assert!(!value.contains('\n'), "multi-line value for '{key}'");
        value = value.trim().to_string();
        if value.is_empty() {
            value.push('-');
        }
        self.items.push(Item::Field { key: key.to_string(), value });
        self
    }

    pub fn table(&mut self, name: &str, columns: &[&str], rows: Vec<Vec<String>>) -> &mut Self {
        assert!(valid_token(name) && columns.iter().all(|c| valid_token(c)));
        for row in &rows {
            assert_eq!(row.len(), columns.len(), "row width in table '{name}'");
            assert!(row.iter().all(|c| valid_token(c)), "invalid cell in table '{name}'");
        }
        self.items.push(Item::Table(Table {
            name: name.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows,
        }));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.items.iter().find_map(|item| match item {
            Item::Field { key: k, value } if k == key => Some(value.as_str()),
            _ => None,
        })
    }

    pub fn get_table(&self, name: &str) -> Option<&Table> {
        self.items.iter().find_map(|item| match item {
            Item::Table(t) if t.name == name => Some(t),
            _ => None,
        })
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for item in &self.items {
            match item {
                Item::Field { key, value } => writeln!(out, "{key} = {value}").unwrap(),
                Item::Table(t) => {
                    writeln!(out, "table {}: {}", t.name, t.columns.join(" ")).unwrap();
                    for row in &t.rows {
                        writeln!(out, "  {}", row.join(" ")).unwrap();
                    }
                    out.push_str("end table\n");
                }
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let err = |line: usize, message: &str| DocumentError::Syntax { line, message: message.to_string() };
        let mut items = Vec::new();
        let mut open: Option<Table> = None;
        for (i, line) in text.lines().enumerate() {
            let n = i + 1;
            if let Some(table) = open.as_mut() {
                if line == "end table" {
                    items.push(Item::Table(open.take().unwrap()));
                } else if let Some(body) = line.strip_prefix("  ") {
                    let row: Vec<String> = body.split(' ').map(str::to_string).collect();
                    if row.len() != table.columns.len() || !row.iter().all(|c| valid_token(c)) {
                        return Err(err(n, "row does not match the table header"));
                    }
                    table.rows.push(row);
                } else {
                    return Err(err(n, "unterminated table"));
                }
            } else if let Some(header) = line.strip_prefix("table ") {
                let (name, columns) = header.split_once(": ").ok_or_else(|| err(n, "expected 'table name: columns'"))?;
                let columns: Vec<String> = columns.split(' ').map(str::to_string).collect();
                if !valid_token(name) || !columns.iter().all(|c| valid_token(c)) {
                    return Err(err(n, "invalid table header"));
                }
                open = Some(Table { name: name.to_string(), columns, rows: Vec::new() });
            } else {
                let (key, value) = line.split_once(" = ").ok_or_else(|| err(n, "expected 'key = value'"))?;
                if !valid_token(key) || value.is_empty() || value.trim() != value {
                    return Err(err(n, "invalid field"));
                }
                items.push(Item::Field { key: key.to_string(), value: value.to_string() });
            }
        }
        if open.is_some() {
            return Err(err(text.lines().count(), "unterminated table"));
        }
        if !text.is_empty() && !text.ends_with('\n') {
            return Err(err(text.lines().count(), "missing final newline"));
        }
        Ok(ResultDocument { items })
    }
}
