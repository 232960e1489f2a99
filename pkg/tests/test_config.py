import pytest

from hyperdiff.config import load_geometry, load_material, parse_key_values
from hyperdiff.errors import ConfigError
from hyperdiff.materials import Holzapfel, NeoHookean, fiber_pair


def test_parse_comments_and_case():
    values = parse_key_values("# header\nC10 = 5e4  # inline\n\n d=1e-6\n")
    assert values == {"c10": "5e4", "d": "1e-6"}


def test_parse_rejects_garbage():
    with pytest.raises(ConfigError, match="2"):
        parse_key_values("c10 = 1\nnot a pair\n")


def test_neo_hookean_file(tmp_path):
    p = tmp_path / "nh.txt"
    p.write_text("material = neo-hookean\nc10 = 5e4\n")
    assert load_material(p) == NeoHookean(c10=5e4)


def test_holzapfel_file(tmp_path):
    p = tmp_path / "hz.txt"
    p.write_text("material = holzapfel\nk1 = 412\nfiber_angle = 30\n")
    a0, g0 = fiber_pair(30.0)
    assert load_material(p) == Holzapfel(k1=412.0, a0=a0, g0=g0)


@pytest.mark.parametrize(
    "text",
    ["material = rubber\n", "material = neo-hookean\nk1 = 3\n", "c10 = soft\n", "c10 = -1\n"],
)
def test_bad_material(tmp_path, text):
    p = tmp_path / "bad.txt"
    p.write_text(text)
    with pytest.raises(ConfigError):
        load_material(p)


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        load_material(tmp_path / "absent.txt")


def test_geometry(tmp_path):
    p = tmp_path / "geo.txt"
    p.write_text("inner_radius = 0.3\nouter_radius = 0.45\naxial_stretch = 1.2\n")
    g = load_geometry(p)
    assert (g.inner_radius, g.outer_radius, g.axial_stretch) == (0.3, 0.45, 1.2)
    p.write_text("inner_radius = 0.5\nouter_radius = 0.4\n")
    with pytest.raises(ConfigError):
        load_geometry(p)
    p.write_text("length = 3\n")
    with pytest.raises(ConfigError):
        load_geometry(p)
