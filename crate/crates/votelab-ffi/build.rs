use std::env;
use std::path::PathBuf;

fn main() {
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");

    let crate_dir = PathBuf::from(env::var("CARGO_MANIFEST_DIR").unwrap());
    let out_header = PathBuf::from(env::var("OUT_DIR").unwrap()).join("votelab.h");

    let config = cbindgen::Config::from_file(crate_dir.join("cbindgen.toml")).unwrap();
    cbindgen::Builder::new()
        .with_crate(&crate_dir)
        .with_config(config)
        .generate()
        .expect("header generation failed")
        .write_to_file(&out_header);

    // Keep an in-tree copy so C projects can point an include path at it.
    let include_dir = crate_dir.join("include");
    std::fs::create_dir_all(&include_dir).unwrap();
    std::fs::copy(&out_header, include_dir.join("votelab.h")).unwrap();
}
