//! Problem-definition files: flat `key = expression` lines with `#` comments.
//!
//! Keys: `alpha`, `c`, `g`, `k`, `f` (required); `nu`, `f_y`, `exact`
//! (optional). `g` and `exact` may use `x`, `k` may use `x` and `t`,
//! `f` and `f_y` may use `t` and `y`; the scalars must be constant.

use crate::expr::{parse_expression_at, Expr, Var};
use fide_core::Problem;
use std::collections::HashMap;
use std::path::Path;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FileError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Parse(#[from] crate::expr::ParseError),
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("missing required field '{0}'")]
    MissingField(&'static str),
    #[error("line {line}: field '{field}' must not use variable '{var}'")]
    VariableScope { field: &'static str, var: &'static str, line: usize },
    #[error("field '{field}' out of range: {message}")]
    Range { field: &'static str, message: String },
}

/// A parsed problem file, ready to solve.
pub struct LoadedProblem {
    pub problem: Problem,
    /// Basis exponent override, when the file pins one.
    pub nu: Option<f64>,
    /// Reference solution, when known.
    pub exact: Option<Arc<dyn Fn(f64) -> f64 + Send + Sync>>,
}

struct Field {
    expr: Expr,
    line: usize,
}

pub fn load_problem_str(text: &str) -> Result<LoadedProblem, FileError> {
    let mut fields: HashMap<String, Field> = HashMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        if line.trim().is_empty() {
            continue;
        }
        let Some(eq) = line.find('=') else {
            return Err(FileError::Format {
                line: line_no,
                message: "expected 'key = expression'".into(),
            });
        };
        let key = line[..eq].trim().to_string();
        if !matches!(key.as_str(), "alpha" | "c" | "nu" | "g" | "k" | "f" | "f_y" | "exact") {
            return Err(FileError::Format { line: line_no, message: format!("unknown key '{key}'") });
        }
        if fields.contains_key(&key) {
            return Err(FileError::Format { line: line_no, message: format!("duplicate key '{key}'") });
        }
        let expr = parse_expression_at(line[eq + 1..].trim(), line_no)?;
        fields.insert(key, Field { expr, line: line_no });
    }

    let constant = |fields: &HashMap<String, Field>, name: &'static str| -> Result<Option<f64>, FileError> {
        match fields.get(name) {
            None => Ok(None),
            Some(field) => {
                if let Some(v) = field.expr.vars().first() {
                    return Err(FileError::VariableScope { field: name, var: v.name(), line: field.line });
                }
                Ok(Some(field.expr.eval(0.0, 0.0, 0.0)))
            }
        }
    };
    let scoped = |fields: &HashMap<String, Field>,
                  name: &'static str,
                  allowed: &[Var]|
     -> Result<Option<Expr>, FileError> {
        match fields.get(name) {
            None => Ok(None),
            Some(field) => {
                for v in field.expr.vars() {
                    if !allowed.contains(&v) {
                        return Err(FileError::VariableScope {
                            field: name,
                            var: v.name(),
                            line: field.line,
                        });
                    }
                }
                Ok(Some(field.expr.clone()))
            }
        }
    };

    let alpha = constant(&fields, "alpha")?.ok_or(FileError::MissingField("alpha"))?;
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(FileError::Range { field: "alpha", message: format!("need 0 < alpha <= 1, got {alpha}") });
    }
    let c = constant(&fields, "c")?.ok_or(FileError::MissingField("c"))?;
    let nu = constant(&fields, "nu")?;
    if let Some(nu) = nu {
        if !(nu > 0.0 && nu <= 1.0) {
            return Err(FileError::Range { field: "nu", message: format!("need 0 < nu <= 1, got {nu}") });
        }
    }
    let g = scoped(&fields, "g", &[Var::X])?.ok_or(FileError::MissingField("g"))?;
    let k = scoped(&fields, "k", &[Var::X, Var::T])?.ok_or(FileError::MissingField("k"))?;
    let f = scoped(&fields, "f", &[Var::T, Var::Y])?.ok_or(FileError::MissingField("f"))?;
    let f_dy = scoped(&fields, "f_y", &[Var::T, Var::Y])?;
    let exact = scoped(&fields, "exact", &[Var::X])?;

    let mut problem = Problem::new(
        alpha,
        c,
        move |x| g.eval(x, 0.0, 0.0),
        move |x, t| k.eval(x, t, 0.0),
        move |t, y| f.eval(0.0, t, y),
    )
    .map_err(|e| FileError::Range { field: "alpha", message: e.to_string() })?;
    if let Some(d) = f_dy {
        problem = problem.with_derivative(move |t, y| d.eval(0.0, t, y));
    }
    let exact = exact.map(|e| {
        Arc::new(move |x: f64| e.eval(x, 0.0, 0.0)) as Arc<dyn Fn(f64) -> f64 + Send + Sync>
    });
    Ok(LoadedProblem { problem, nu, exact })
}

pub fn load_problem(path: &Path) -> Result<LoadedProblem, FileError> {
    let text = std::fs::read_to_string(path).map_err(|source| FileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    load_problem_str(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn err_of(text: &str) -> FileError {
        match load_problem_str(text) {
            Ok(_) => panic!("expected a load failure"),
            Err(e) => e,
        }
    }

    const WORKED: &str = "\
# half-order problem with constant kernel
alpha = 1/2
c = 0
nu = 0.5
g = sqrt(pi)/2 - 1/4
k = 1/2
f = y^2
f_y = 2*y
exact = sqrt(x)
";

    #[test]
    fn loads_a_complete_file() {
        let loaded = load_problem_str(WORKED).unwrap();
        assert_eq!(loaded.problem.alpha, 0.5);
        assert_eq!(loaded.problem.y0, 0.0);
        assert_eq!(loaded.nu, Some(0.5));
        let exact = loaded.exact.unwrap();
        assert!((exact(0.25) - 0.5).abs() < 1e-15);
        assert!(loaded.problem.f_dy.is_some());
    }

    #[test]
    fn missing_fields_are_reported() {
        let err = err_of("alpha = 0.5\nc = 0\ng = x\nk = 1\n");
        assert!(matches!(err, FileError::MissingField("f")));
    }

    #[test]
    fn scope_violations_are_reported() {
        let bad = "alpha = 0.5\nc = 0\ng = x + t\nk = 1\nf = y\n";
        let err = err_of(bad);
        match err {
            FileError::VariableScope { field, var, line } => {
                assert_eq!(field, "g");
                assert_eq!(var, "t");
                assert_eq!(line, 3);
            }
            other => panic!("unexpected error {other:?}"),
        }
        let bad = "alpha = 0.5\nc = 0\ng = x\nk = 1\nf = x*y\n";
        assert!(matches!(err_of(bad), FileError::VariableScope { field: "f", .. }));
    }

    #[test]
    fn range_violations_are_reported() {
        let bad = "alpha = -1\nc = 0\ng = x\nk = 1\nf = y\n";
        assert!(matches!(err_of(bad), FileError::Range { field: "alpha", .. }));
        let bad = "alpha = 0.5\nc = 0\nnu = 1.75\ng = x\nk = 1\nf = y\n";
        assert!(matches!(err_of(bad), FileError::Range { field: "nu", .. }));
    }

    #[test]
    fn format_errors_carry_line_numbers() {
        let bad = "alpha = 0.5\nwhatever\n";
        match err_of(bad) {
            FileError::Format { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        let bad = "alpha = 0.5\nbogus_key = 1\n";
        assert!(matches!(err_of(bad), FileError::Format { line: 2, .. }));
        let bad = "alpha = 0.5\nc = (1\n";
        match err_of(bad) {
            FileError::Parse(e) => assert_eq!(e.line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }
}
