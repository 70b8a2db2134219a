//! Generate public parameters once, save them, and load them elsewhere.

use flexproofs::vc::VcParams;

fn main() -> flexproofs::Result<()> {
    let path = std::env::temp_dir().join("flexproofs-example.pp");
    let pp = VcParams::setup(1 << 8, 4, &mut rand::rngs::OsRng)?;
    pp.save(&path)?;
    let loaded = VcParams::load(&path)?;
    println!(
        "{} bytes at {}; N = {}, batch {}; identical after reload: {}",
        std::fs::metadata(&path)?.len(),
        path.display(),
        loaded.len(),
        loaded.batch_size(),
        loaded == pp
    );

    let mut bytes = std::fs::read(&path)?;
    bytes[3] ^= 1;
    println!("corrupted file: {}", VcParams::from_bytes(&bytes).unwrap_err());
    std::fs::remove_file(&path)?;
    Ok(())
}
