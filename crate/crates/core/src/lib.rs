pub mod bps;
pub mod clifford;
pub mod error;
pub mod exact;
pub mod forms;
pub mod plectic;
pub mod serre;
pub mod superspace;
pub mod truncation;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $file:literal) => {
            #[doc = include_str!(concat!("../../../book/src/", $file))]
            mod $name {}
        };
    }
    chapter!(overview, "overview.md");
    chapter!(exact, "exact.md");
    chapter!(forms, "forms.md");
    chapter!(plectic, "plectic.md");
    chapter!(truncation, "truncation.md");
    chapter!(superspace, "superspace.md");
    chapter!(bps, "bps.md");
    chapter!(serre, "serre.md");
    chapter!(cli, "cli.md");
}
