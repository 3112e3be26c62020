//! Residual check of every closed-form catalog entry.

use spineq::catalog::{verify_all, VERIFY_POINTS};

fn main() {
    for r in verify_all(VERIFY_POINTS) {
        match r {
            Ok(r) => println!(
                "entry {:2}  residual {:.2e}  {}{}",
                r.id,
                r.max_residual,
                if r.passed { "pass" } else { "FAIL" },
                r.amended_residual.map(|a| format!("  (amended form {a:.2e})")).unwrap_or_default()
            ),
            Err(e) => println!("error: {e}"),
        }
    }
}
