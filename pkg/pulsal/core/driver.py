#-
# Copyright (c) 2026 The pulsal developers
# All rights reserved.
#

"""
Declarative configuration of pulsal tasks.

Tasks and library components declare their options as class attributes
(:class:`Option`, :class:`Argument`, :class:`NestedConfig`,
:class:`SubCommand`). A metaclass gathers them in a config model that can
build an argparse parser and a namespace of default values, so the same
declaration drives the command line, configuration files and programmatic
use.
"""

import configparser
import logging

from collections import OrderedDict
from argparse import (
    Namespace, ArgumentParser, RawTextHelpFormatter,
    _StoreTrueAction, _StoreFalseAction)

from pulsal.core.error import ConfigError, UsageError

logger = logging.getLogger(__name__)

__all__ = ("NestingNamespace", "TaskDriverArgumentParser", "Option",
           "Argument", "NestedConfig", "ProxyConfig", "SubCommand",
           "ConfigurableComponent", "TaskDriver")


class NestingNamespace(Namespace):
    """
    Namespace that stores dotted keys as nested namespaces, so that
    ``ns.experiment.sweep`` is set by argparse from dest="experiment.sweep".
    """

    def __setattr__(self, name, value):
        names = name.split(".")
        if len(names) > 1:
            parent = self
            for ns_name in names[:-1]:
                ns = getattr(parent, ns_name, NestingNamespace())
                setattr(parent, ns_name, ns)
                parent = ns
            setattr(parent, names[-1], value)
        else:
            super().__setattr__(name, value)

    def __getattr__(self, name):
        names = name.split(".")
        if len(names) > 1:
            ns = self
            for ns_name in names[:-1]:
                ns = getattr(ns, ns_name)
            return getattr(ns, names[-1])
        raise AttributeError("Attribute %s does not exist" % name)

    def flatten(self, ns=None):
        """Collapse nested namespaces into a single flat namespace."""
        ns = ns or Namespace()
        for key, val in self.__dict__.items():
            if isinstance(val, self.__class__):
                val.flatten(ns)
            else:
                setattr(ns, key, val)
        return ns

    def update(self, other):
        for key, val in other.__dict__.items():
            if isinstance(val, self.__class__) and hasattr(self, key):
                getattr(self, key).update(val)
            else:
                setattr(self, key, val)


class TaskDriverHelpFormatter(RawTextHelpFormatter):

    def _get_default_metavar_for_optional(self, action):
        return action.dest.split(".")[-1]

    def _get_default_metavar_for_positional(self, action):
        return action.dest.split(".")[-1]


class TaskDriverArgumentParser(ArgumentParser):
    """
    Argument parser for TaskDriver-based tools.

    Parsed values are stored in a :class:`NestingNamespace` and defaults can
    be loaded from an INI configuration file with :meth:`apply_config_file`.
    """

    config_section = "pulsal"
    """INI section holding the defaults of the top-level parser."""

    def __init__(self, *args, **kwargs):
        if "formatter_class" not in kwargs:
            kwargs["formatter_class"] = TaskDriverHelpFormatter
        super().__init__(*args, **kwargs)
        self._subparsers_action = None

    def error(self, message):
        raise UsageError("{}: {}".format(self.prog, message))

    def parse_args(self, args=None, namespace=None, **kwargs):
        if not namespace:
            namespace = NestingNamespace()
        return super().parse_args(args, namespace, **kwargs)

    def add_subparsers(self, *args, **kwargs):
        """
        argparse allows a single subparsers action per parser, every
        :class:`SubCommand` of a task shares the same one.
        """
        if self._subparsers_action is None:
            kwargs.setdefault("dest", "subcommand")
            self._subparsers_action = super().add_subparsers(*args, **kwargs)
            self._subparsers_action.required = True
        return self._subparsers_action

    @property
    def subcommand_parsers(self):
        """Map subcommand names to their parsers."""
        if self._subparsers_action is None:
            return {}
        return dict(self._subparsers_action.choices)

    def apply_config_file(self, path):
        """
        Load option defaults from an INI file.

        Keys of the ``[pulsal]`` section apply to this parser, keys of a
        section named after a subcommand apply to that subcommand parser.
        Command line values still take precedence.

        :param path: path of the configuration file
        :type path: str
        """
        ini = configparser.ConfigParser()
        try:
            with open(path, "r") as fd:
                ini.read_file(fd)
        except configparser.Error as e:
            raise ConfigError("Malformed config file {}: {}".format(path, e))
        subparsers = self.subcommand_parsers
        for section in ini.sections():
            if section == self.config_section:
                target = self
            elif section in subparsers:
                target = subparsers[section]
            else:
                raise ConfigError("Unknown config section [{}] in {}".format(
                    section, path))
            for key, value in ini.items(section, raw=True):
                target.set_config_default(key, value)
        logger.debug("Loaded configuration from %s", path)

    def set_config_default(self, key, value):
        """
        Set the default of the optional argument matching a config key.

        String defaults are converted by argparse with the option's own
        type validator when the option is not given on the command line,
        list and boolean options are converted here.
        """
        key = key.replace("-", "_")
        for action in self._actions:
            if not action.option_strings:
                continue
            if action.dest.split(".")[-1] != key:
                continue
            if isinstance(action, (_StoreTrueAction, _StoreFalseAction)):
                states = configparser.ConfigParser.BOOLEAN_STATES
                try:
                    action.default = states[value.strip().lower()]
                except KeyError:
                    raise ConfigError("Invalid boolean {} for {}".format(
                        value, key))
            elif action.nargs in ("+", "*"):
                items = value.replace(",", " ").split()
                convert = action.type or str
                action.default = [convert(item) for item in items]
            else:
                action.default = value
            return
        raise ConfigError("Unknown configuration key {}".format(key))


class DriverConfigEntry:
    """Base element of declarative configuration options in driver classes"""

    def __init__(self, *args, **kwargs):
        """
        Arguments are the same as in
        :meth:`argparse.ArgumentParser.add_argument` except the option name,
        which is the name of the class attribute holding the entry.
        """
        self.name = None
        self.args = args
        self.kwargs = kwargs

    @property
    def dest(self):
        return self.kwargs.get("dest", self.name)

    @property
    def display_name(self):
        """Option name used on the command line"""
        return self.name.replace("_", "-")

    def make_config(self, parser, prefix="", keys=None, ns=None):
        """
        Add this configuration entry to an argument parser.

        :param parser: the parser to which the entry is added
        :type parser: :class:`TaskDriverArgumentParser`
        :param prefix: dotted namespace where the parsed value is stored,
        with prefix="x.y." and name="key" the value ends up in args.x.y.key
        :type prefix: str
        :param keys: opt-in list of keys to add, all if None
        :type keys: iterable
        :param ns: namespace receiving the default value
        :type ns: :class:`NestingNamespace`
        :return: the namespace holding the defaults
        """
        if ns is None:
            ns = NestingNamespace()
        if keys and self.name not in keys:
            return ns
        self._make_argparse(parser, prefix)
        self._make_default(ns, prefix)
        return ns

    def _make_argparse(self, parser, prefix):
        pass

    def _make_default(self, ns, prefix):
        # same implicit defaults as argparse for the boolean flags
        implicit = {"store_true": False, "store_false": True}
        default = self.kwargs.get(
            "default", implicit.get(self.kwargs.get("action")))
        setattr(ns, self.dest, default)

    def __str__(self):
        return "<%s %s %s>" % (self.name, self.args, self.kwargs)


class Argument(DriverConfigEntry):
    """Configuration entry rendered as positional argument"""

    def _make_argparse(self, parser, prefix):
        name = prefix + self.dest
        args = (name,) + self.args
        parser.add_argument(*args, **self.kwargs)


class Option(DriverConfigEntry):
    """Configuration entry rendered as optional argument"""

    def _make_argparse(self, parser, prefix):
        if prefix:
            kwargs = dict(self.kwargs)
            kwargs["dest"] = prefix + self.dest
        else:
            kwargs = self.kwargs
        args = ("--{}".format(self.display_name),) + self.args
        parser.add_argument(*args, **kwargs)


class NestedConfig(DriverConfigEntry):
    """Embed the configuration model of another component"""

    def __init__(self, nested):
        super().__init__()
        self.nested = nested

    def make_config(self, parser, prefix="", keys=None, ns=None):
        if ns is None:
            ns = NestingNamespace()
        nested_ns = NestingNamespace()
        setattr(ns, self.name, nested_ns)
        if keys and self.name not in keys:
            return ns
        prefix += "%s." % self.name
        model = self.nested.get_config_model()
        model.make_config(parser, prefix=prefix, ns=nested_ns)
        return ns

    def __str__(self):
        return "<%s %s>" % (self.name, self.nested.get_config_model())


class ProxyConfig(DriverConfigEntry):
    """
    Container of configuration entries that does not require a separate
    ConfigurableComponent.
    """

    def __init__(self, *args, **kwargs):
        super().__init__()
        self.nested = OrderedDict()
        for opt in args:
            self.nested[opt.name] = opt
        for key, opt in kwargs.items():
            self.add_option(key, opt)

    def add_option(self, name, option):
        """
        Add a new entry to the container.

        :param option: the entry to add
        :type option: :class:`DriverConfigEntry`
        """
        option.name = name
        self.nested[name] = option

    def make_config(self, parser, prefix="", keys=None, ns=None):
        if ns is None:
            ns = NestingNamespace()
        for key, opt in self.nested.items():
            if keys and key not in keys:
                continue
            opt.make_config(parser, prefix=prefix, ns=ns)
        return ns

    def __str__(self):
        return "<%s>" % ", ".join(str(opt) for opt in self.nested.values())


class SubCommand(DriverConfigEntry):
    """
    Configuration entry rendered as a subcommand. The parsed namespace gets
    a ``subcommand_class`` callable that instantiates the selected
    component with its own nested configuration.
    """

    def __init__(self, nested=None, **kwargs):
        super().__init__(**kwargs)
        if nested is None:
            nested = ConfigurableComponent
        self.nested = nested

    def make_config(self, parser, prefix="", keys=None, ns=None):
        if ns is None:
            ns = NestingNamespace()
        nested_ns = NestingNamespace()
        setattr(ns, self.name, nested_ns)
        subparser = parser.add_subparsers()
        kwargs = dict(self.kwargs)
        kwargs.setdefault("help", self.nested.description.strip())
        kwargs.setdefault("description", self.nested.description)
        subcommand = subparser.add_parser(self.display_name, *self.args,
                                          **kwargs)
        name = self.name

        def wrap_subcommand(*args, **kwargs):
            kwargs["config"] = getattr(kwargs["config"], name)
            return self.nested(*args, **kwargs)

        subcommand.set_defaults(
            **{"{}subcommand_class".format(prefix): wrap_subcommand})
        prefix += "{}.".format(self.name)
        model = self.nested.get_config_model()
        model.make_config(subcommand, prefix=prefix, ns=nested_ns)
        return ns

    def __str__(self):
        return "<{0} {1}>".format(self.name, self.nested.get_config_model())


class DriverConfig(ProxyConfig):
    """
    Configuration model of a component, built by :class:`TaskDriverType`.
    """

    def __iter__(self):
        for keyopt in self.nested.items():
            yield keyopt

    def update(self, other):
        """
        Merge another configuration model in this one, entries of
        this model shadow the ones in the other.
        """
        merge_opts = OrderedDict(other.nested)
        merge_opts.update(self.nested)
        self.nested = merge_opts


class TaskDriverType(type):
    """
    Metaclass of configurable components.
    Moves the declarative configuration entries of the class body in the
    class config model, merging the models of the base classes.
    """

    def __new__(cls, name, bases, attrs, **kwargs):
        config = DriverConfig()
        for key, val in list(attrs.items()):
            if isinstance(val, DriverConfigEntry):
                del attrs[key]
                config.add_option(key, val)
        for base in bases:
            if hasattr(base, "_config_model"):
                config.update(base._config_model)
        new_class = super().__new__(cls, name, bases, attrs, **kwargs)
        new_class._config_model = config
        return new_class


class ConfigurableComponent(metaclass=TaskDriverType):
    """
    Base class of configurable components.
    The configuration namespace is given to the constructor as the
    ``config`` keyword argument.
    """
    description = ""

    @classmethod
    def get_config_model(cls):
        """Get the config model created by the metaclass"""
        return cls._config_model

    @classmethod
    def make_config(cls, parser, keys=None):
        """
        Register the component options in a parser.

        :param parser: an argument parser
        :type parser: :class:`argparse.ArgumentParser`
        :param keys: include only the given options
        :type keys: iterable
        :return: a namespace with the default configuration
        """
        return cls._config_model.make_config(parser, keys=keys)

    @classmethod
    def default_config(cls, **overrides):
        """
        Build the default configuration without a command line.
        Dotted override keys set nested values.
        """
        parser = TaskDriverArgumentParser(add_help=False)
        ns = cls.make_config(parser)
        for key, value in overrides.items():
            setattr(ns, key, value)
        return ns

    def __init__(self, **kwargs):
        try:
            self.config = kwargs.pop("config")
        except KeyError:
            logger.error("Missing required argument: config")
            raise
        super().__init__(**kwargs)

    def update_config(self, config):
        """
        Merge a partial configuration in the current one.

        :param config: the configuration to merge
        :type config: :class:`NestingNamespace`
        """
        if self.config:
            self.config.update(config)
        else:
            self.config = config


class TaskDriver(ConfigurableComponent):
    """
    Runnable task with a configuration, base class of the pulsal tools
    and experiment drivers.
    """

    def run(self):
        """This method should be overridden in subclasses"""
        raise NotImplementedError("Abstract method")
