import os
from typing import Mapping, MutableMapping, Optional

DEFAULTS = dict(
    tol_norm=1e-10,
    max_iters=10_000,
    dense_limit=512,
    eps_num=1e-9,
    delta=0.25,
    carleson_constant=16.,
    principal_factor=10.,
    ratio_ceiling=100.,
    hat_convention='hat-of-triple',
    mirror_rule='by-end',
    workers=1,
)


class Config(dict):
    """Manage the package configuration from a single object.

    With a :class:`~twp.Config` object you can edit settings within the twp
    scope, like the numerical tolerances used by the norm solver
    (:obj:`tol_norm`, :obj:`max_iters`), the slack used when asserting
    necessity (:obj:`eps_num`), the stopping parameter :obj:`delta` and the
    directory where run configurations are stored (:obj:`config_dir`).
    Functions of the package read their defaults from :obj:`twp.config` when
    the corresponding argument is :obj:`None`.
    """

    def __init__(self, **kwargs):
        super(Config, self).__init__()
        # configure paths for config files and reports
        self.config_dir = kwargs.pop('config_dir', 'config')
        self.out_dir = kwargs.pop('out_dir', 'out')
        self.update(DEFAULTS)
        self.update(**kwargs)

    def __setitem__(self, key: str, value):
        # when adding a directory, transform it to an absolute path (if it is
        # not already) considering the path relative to the current directory
        if key.endswith('_dir') and value is not None:
            if not os.path.isabs(value):
                value = os.path.join(self.curr_dir, value)
        super(Config, self).__setitem__(key, value)

    def __setattr__(self, key, value):
        self[key] = value

    def __getattr__(self, item):
        try:
            return self[item]
        except KeyError:
            raise AttributeError(item)

    def __delattr__(self, item):
        del self[item]

    def __setstate__(self, state):
        self.update(state)

    def __getstate__(self):
        return dict(self)

    def __repr__(self):
        type_name = type(self).__name__
        arg_strings = []
        for name, value in sorted(self.items()):
            arg_strings.append('%s=%r' % (name, value))
        return '%s(%s)' % (type_name, ', '.join(arg_strings))

    @property
    def root_dir(self):
        """Path to twp installation."""
        return os.path.dirname(os.path.realpath(__file__))

    @property
    def curr_dir(self):
        """System current directory."""
        return os.getcwd()

    def update(self, mapping: Optional[Mapping] = None, **kwargs) -> None:
        mapping = dict(mapping or {}, **kwargs)
        for k, v in mapping.items():
            self[k] = v

    def update_from_env(self,
                        prefix: str = 'TWP_',
                        environ: Optional[MutableMapping] = None):
        """Override existing keys with environment variables.

        A key :obj:`tol_norm` is overridden by the variable
        :obj:`{prefix}TOL_NORM`, cast to the type of the current value.

        Args:
            prefix (str): Prefix of the variables to consider.
                (default: :obj:`'TWP_'`)
            environ (MutableMapping, optional): Mapping to read variables
                from. If :obj:`None`, then :obj:`os.environ` is used.
                (default: :obj:`None`)
        """
        from twp.utils.parser_utils import str_to_bool
        environ = os.environ if environ is None else environ
        for key, value in list(self.items()):
            var = prefix + key.upper()
            if var not in environ:
                continue
            raw = environ[var]
            if isinstance(value, bool):
                self[key] = str_to_bool(raw)
            elif isinstance(value, int):
                self[key] = int(float(raw))
            elif isinstance(value, float):
                self[key] = float(raw)
            else:
                self[key] = raw
        return self

    def load_config_file(self, filename: str):
        """Load a configuration from a json or yaml file."""
        with open(filename, 'r') as fp:
            if filename.endswith('.json'):
                import json
                data = json.load(fp)
            elif filename.endswith('.yaml') or filename.endswith('.yml'):
                import yaml
                data = yaml.load(fp, Loader=yaml.FullLoader)
            else:
                raise RuntimeError('Config file format not supported.')
        self.update(data)
        return self

    @classmethod
    def from_config_file(cls, filename: str):
        """Create new configuration from a json or yaml file."""
        config = cls()
        config.load_config_file(filename)
        return config
