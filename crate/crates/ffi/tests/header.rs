use std::path::PathBuf;

#[test]
fn header_matches_source() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let config = cbindgen::Config::from_file(dir.join("cbindgen.toml")).unwrap();
    let mut fresh = Vec::new();
    cbindgen::Builder::new()
        .with_crate(&dir)
        .with_config(config)
        .generate()
        .expect("header generation")
        .write(&mut fresh);
    let committed = std::fs::read(dir.join("include/heightlab.h")).unwrap();
    assert!(
        fresh == committed,
        "include/heightlab.h is stale; rerun cbindgen --config cbindgen.toml --output include/heightlab.h"
    );
}

#[test]
fn header_compiles_as_c_and_cpp() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    for (cc, lang) in [("cc", "c"), ("c++", "c++")] {
        let status = std::process::Command::new(cc)
            .args(["-fsyntax-only", "-Wall", "-Werror", "-x", lang])
            .arg(dir.join("include/heightlab.h"))
            .status();
        match status {
            Ok(s) => assert!(s.success(), "{cc} rejected the header"),
            Err(_) => eprintln!("{cc} not found, skipping"),
        }
    }
}
