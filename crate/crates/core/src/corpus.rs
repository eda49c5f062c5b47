//! Bundled group definitions and certificate suites.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::GroupDef;
use crate::groupfile::parse_group_file;

pub const GRIGORCHUK_AGT: &str = include_str!("../corpus/grigorchuk.agt");
pub const BASILICA_AGT: &str = include_str!("../corpus/basilica.agt");
pub const ODOMETER_AGT: &str = include_str!("../corpus/odometer.agt");

pub const BASILICA_IDENTITIES: &str = include_str!("../corpus/basilica_identities.cert");
pub const BASILICA_NEA: &str = include_str!("../corpus/basilica_nea.cert");
pub const GRIGORCHUK_IDENTITIES: &str = include_str!("../corpus/grigorchuk_identities.cert");
pub const GRIGORCHUK_NEA: &str = include_str!("../corpus/grigorchuk_nea.cert");

/// `(file name, contents)` of every bundled certificate.
pub const SUITES: [(&str, &str); 4] = [
    ("basilica_identities.cert", BASILICA_IDENTITIES),
    ("basilica_nea.cert", BASILICA_NEA),
    ("grigorchuk_identities.cert", GRIGORCHUK_IDENTITIES),
    ("grigorchuk_nea.cert", GRIGORCHUK_NEA),
];

fn load(text: &str) -> Arc<GroupDef> {
    Arc::new(parse_group_file(text).expect("bundled group file is valid"))
}

pub fn grigorchuk() -> Arc<GroupDef> {
    load(GRIGORCHUK_AGT)
}

pub fn basilica() -> Arc<GroupDef> {
    load(BASILICA_AGT)
}

pub fn odometer() -> Arc<GroupDef> {
    load(ODOMETER_AGT)
}

pub fn by_name(name: &str) -> Result<Arc<GroupDef>> {
    match name {
        "grigorchuk" => Ok(grigorchuk()),
        "basilica" => Ok(basilica()),
        "odometer" => Ok(odometer()),
        _ => Err(Error::UnknownGroup(name.to_string())),
    }
}
