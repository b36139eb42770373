from .io import (load_instance, load_json, load_omega, load_params,
                 load_values, save_instance, save_json)
