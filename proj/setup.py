import os
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        # Output directory for splitstab/_core*.so; get_ext_fullpath handles
        # both regular and editable (in-place) builds.
        extdir = Path(self.get_ext_fullpath(ext.name)).resolve().parent
        source_dir = Path(__file__).resolve().parent
        build_dir = Path(self.build_temp).resolve()
        build_dir.mkdir(parents=True, exist_ok=True)

        cfg = "Debug" if self.debug else "Release"
        cmake_args = [
            f"-DCMAKE_BUILD_TYPE={cfg}",
            f"-DPython3_EXECUTABLE={sys.executable}",
            f"-DSPLITSTAB_EXT_OUTDIR={extdir}",
            "-DSPLITSTAB_PYTHON_ONLY=ON",
        ]
        if "CMAKE_ARGS" in os.environ:
            cmake_args += os.environ["CMAKE_ARGS"].split()

        subprocess.run(
            ["cmake", "-S", str(source_dir), "-B", str(build_dir)] + cmake_args,
            check=True,
        )
        subprocess.run(
            ["cmake", "--build", str(build_dir), "--target", "_core"],
            check=True,
        )


setup(
    ext_modules=[CMakeExtension("splitstab._core")],
    cmdclass={"build_ext": CMakeBuild},
)
