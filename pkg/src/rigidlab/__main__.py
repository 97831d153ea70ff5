from rigidlab.cli import main

raise SystemExit(main())
