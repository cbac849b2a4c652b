import pathlib
import shutil
import subprocess

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CargoBuild(build_ext):
    """Builds the olex extension module with cargo instead of a compiler."""

    def build_extension(self, ext):
        root = pathlib.Path(__file__).resolve().parent
        subprocess.check_call(["cargo", "build", "--release", "-p", "olex-py"], cwd=root)
        built = root / "target" / "release" / "libolex.so"
        out = pathlib.Path(self.get_ext_fullpath(ext.name))
        out.parent.mkdir(parents=True, exist_ok=True)
        shutil.copyfile(built, out)


setup(
    ext_modules=[Extension("olex", sources=[])],
    cmdclass={"build_ext": CargoBuild},
)
