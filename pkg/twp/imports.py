from importlib.util import find_spec


def _package_available(package_name: str) -> bool:
    try:
        return find_spec(package_name) is not None
    except ModuleNotFoundError:
        return False


# optional, only the experiment extra installs it
_HYDRA_AVAILABLE = _package_available("hydra")
