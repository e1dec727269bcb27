int injection_ok_constant_command_main(int c) {
  char *x = input();
  x[0] = 1;
  exec("ls");
  return 0;
}
