import importlib
import logging
import pkgutil

def qualifiedImport(qualifiedName):
    """
    Import a fully qualified name, e.g. 'obeq.core.handles.LatticeAdditive'.
    """

    if (qualifiedName is None or qualifiedName == '' or qualifiedName == 0):
        raise ValueError("Empty name supplied for import.")

    parts = qualifiedName.split('.')
    module_name = '.'.join(parts[0:-1])
    target_name = parts[-1]

    if (len(parts) == 1):
        raise ValueError("Non-qualified name supplied for import: " + qualifiedName)

    try:
        module = importlib.import_module(module_name)
    except ImportError:
        raise ValueError("Unable to locate module (%s) for qualified object (%s)." %
                (module_name, qualifiedName))

    if (target_name == ''):
        return module

    if (not hasattr(module, target_name)):
        raise ValueError("Module (%s) has no member (%s)." % (module_name, target_name))

    return getattr(module, target_name)

def getAllDescendents(classObject):
    """
    Get all the descendent classes of the given class.
    """

    descendents = set()

    for childClass in classObject.__subclasses__():
        descendents.add(childClass)
        descendents |= getAllDescendents(childClass)

    return descendents

def loadSubclass(baseClass, name, packageName):
    """
    Find a subclass of `baseClass` by name.
    The name can be fully qualified (it must then start with the package's root)
    or just the bare class name, in which case every module of `packageName` is imported
    first so that its subclasses are registered.
    """

    root = packageName.split('.')[0] + '.'
    if (name.startswith(root)):
        found = qualifiedImport(name)
        if (not (isinstance(found, type) and issubclass(found, baseClass))):
            raise LookupError("'%s' is not a %s." % (name, baseClass.__name__))

        return found

    package = importlib.import_module(packageName)
    for moduleInfo in pkgutil.iter_modules(package.__path__):
        try:
            importlib.import_module('%s.%s' % (packageName, moduleInfo.name))
        except ImportError as ex:
            logging.warning('Unable to import module: "%s". -- %s' % (moduleInfo.name, str(ex)))

    for subclass in _sortedClasses(getAllDescendents(baseClass)):
        if (subclass.__name__ == name):
            return subclass

    raise LookupError('Could not find a %s with the name: %s' % (baseClass.__name__, name))

def _sortedClasses(classes):
    """
    Classes in a stable (qualified name) order.
    """

    return sorted(classes, key = lambda cls: cls.__module__ + '.' + cls.__qualname__)
